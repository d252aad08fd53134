#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nplan/pddl/ast.hpp"

namespace nplan::pddl {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

// Parses a PDDL domain covering STRIPS + typing + numeric fluents.
// Unknown :requirements tags are reported through `warnings` (when non-null)
// instead of failing.
LiftedDomain parse_domain(const std::string& text, std::vector<std::string>* warnings = nullptr);

// Parses a problem and checks it against the domain's declarations.
LiftedProblem parse_problem(const std::string& text, const LiftedDomain& domain,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace nplan::pddl
