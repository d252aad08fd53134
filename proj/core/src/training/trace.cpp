#include "nplan/training/trace.hpp"

#include <stdexcept>

namespace nplan::training {

PlanTrace build_trace(const task::GroundTask& task, const std::vector<std::string>& plan) {
    task::ValidationResult validation = task::validate_plan(task, plan);
    if (!validation.valid)
        throw std::runtime_error("plan invalid at step " + std::to_string(validation.failed_step) +
                                 ": " + validation.reason);
    PlanTrace trace;
    trace.task = &task;
    trace.states = std::move(validation.trace);
    trace.actions = std::move(validation.actions);
    for (int action : trace.actions)
        trace.step_costs.push_back(task.actions[static_cast<std::size_t>(action)].cost);
    trace.cost_to_go.assign(trace.states.size(), 0.0);
    for (std::size_t j = trace.actions.size(); j-- > 0;)
        trace.cost_to_go[j] = trace.cost_to_go[j + 1] + trace.step_costs[j];
    return trace;
}

std::vector<PlanTrace> build_traces(const std::vector<const task::GroundTask*>& tasks,
                                    const std::vector<std::vector<std::string>>& plans) {
    if (tasks.size() != plans.size())
        throw std::runtime_error("each task needs exactly one plan");
    std::vector<PlanTrace> traces;
    traces.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i)
        traces.push_back(build_trace(*tasks[i], plans[i]));
    return traces;
}

}  // namespace nplan::training
