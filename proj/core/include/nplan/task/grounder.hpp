#pragma once

#include <stdexcept>

#include "nplan/pddl/ast.hpp"
#include "nplan/task/ground_task.hpp"

namespace nplan::task {

class GroundError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Instantiates every type-respecting parameter binding of every schema.
// X_p holds all ground atoms over the objects; X_n only the fluents with an
// initial assignment, and referencing any other fluent is an error.
GroundTask ground(const pddl::LiftedDomain& domain, const pddl::LiftedProblem& problem);

}  // namespace nplan::task
