#include "nplan/search/heuristic.hpp"

#include <algorithm>
#include <stdexcept>

#include "nplan/nilg/graph.hpp"

namespace nplan::search {

double GoalCountHeuristic::evaluate(const task::GroundTask& task, const task::State& s) {
    double unsatisfied = 0.0;
    for (const task::GroundCondition& g : task.goal) {
        if (!task::holds(g, s)) unsatisfied += 1.0;
    }
    return unsatisfied;
}

LearnedHeuristic::LearnedHeuristic(ccwl::CcwlModel model, std::vector<double> weights, double bias)
    : model_(std::move(model)), weights_(std::move(weights)), bias_(bias) {
    if (weights_.size() != model_.feature_length())
        throw std::runtime_error("weight vector does not match the model's feature length");
}

double LearnedHeuristic::evaluate(const task::GroundTask& task, const task::State& s) {
    std::vector<double> features = ccwl::featurize(nilg::build_nilg(task, s), model_);
    double value = bias_;
    for (std::size_t i = 0; i < features.size(); ++i) value += weights_[i] * features[i];
    return std::max(0.0, value);
}

}  // namespace nplan::search
