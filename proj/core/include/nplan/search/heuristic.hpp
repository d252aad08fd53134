#pragma once

#include <memory>
#include <vector>

#include "nplan/ccwl/ccwl.hpp"
#include "nplan/task/ground_task.hpp"

namespace nplan::search {

// Deterministic state evaluator; infinity estimates a deadend. Values are
// never negative.
class Heuristic {
  public:
    virtual ~Heuristic() = default;
    virtual double evaluate(const task::GroundTask& task, const task::State& s) = 0;
};

class BlindHeuristic : public Heuristic {
  public:
    double evaluate(const task::GroundTask&, const task::State&) override { return 0.0; }
};

// Number of goal conditions (propositional and numeric) unsatisfied in s.
class GoalCountHeuristic : public Heuristic {
  public:
    double evaluate(const task::GroundTask& task, const task::State& s) override;
};

// Linear model over the CCWL embedding of the task's graph at s, clamped at 0.
class LearnedHeuristic : public Heuristic {
  public:
    LearnedHeuristic(ccwl::CcwlModel model, std::vector<double> weights, double bias);

    double evaluate(const task::GroundTask& task, const task::State& s) override;

    const ccwl::CcwlModel& model() const { return model_; }

  private:
    ccwl::CcwlModel model_;
    std::vector<double> weights_;
    double bias_;
};

}  // namespace nplan::search
