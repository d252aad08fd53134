#pragma once

#include <string>

#include "nplan/pddl/ast.hpp"

namespace nplan::pddl {

// Pretty-printers producing PDDL text that re-parses to a structurally
// identical AST.
std::string to_pddl(const LiftedDomain& domain);
std::string to_pddl(const LiftedProblem& problem);

std::string to_string(const ArithExpr& expr);
std::string to_string(const Condition& condition);
std::string to_string(const Literal& literal);

}  // namespace nplan::pddl
