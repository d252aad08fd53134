#pragma once

#include <string>
#include <vector>

namespace nplan::task {

// Plan files hold one action per line, "(name obj1 obj2 ...)"; lines starting
// with ';' and blank lines are ignored.
std::vector<std::string> parse_plan_text(const std::string& text);
std::vector<std::string> read_plan_file(const std::string& path);
std::string format_plan(const std::vector<std::string>& signatures, double cost);

}  // namespace nplan::task
