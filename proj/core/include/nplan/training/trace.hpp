#pragma once

#include <string>
#include <vector>

#include "nplan/task/ground_task.hpp"

namespace nplan::training {

// States visited by a validated plan together with the remaining cost to the
// goal from each of them.
struct PlanTrace {
    const task::GroundTask* task = nullptr;
    std::vector<task::State> states;  // s_0 .. s_n
    std::vector<int> actions;         // a_1 .. a_n (indices into task->actions)
    std::vector<double> step_costs;
    std::vector<double> cost_to_go;  // one per state; 0 at the goal
};

// Validates the plan on the task and computes cost-to-go targets backwards
// from the goal. Throws std::runtime_error with the validation diagnosis when
// the plan does not hold.
PlanTrace build_trace(const task::GroundTask& task, const std::vector<std::string>& plan);

std::vector<PlanTrace> build_traces(const std::vector<const task::GroundTask*>& tasks,
                                    const std::vector<std::vector<std::string>>& plans);

}  // namespace nplan::training
