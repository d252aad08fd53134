#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nplan::cli {

// Exit codes shared by the binary and the in-process driver: 0 success/plan
// found, 1 unsolvable or invalid, 2 resource limit, 3 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nplan::cli
