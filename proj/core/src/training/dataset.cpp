#include "nplan/training/dataset.hpp"

#include <sstream>
#include <unordered_set>

#include "nplan/nilg/graph.hpp"

namespace nplan::training {

namespace {

std::vector<double> embed(const task::GroundTask& task, const task::State& s,
                          const ccwl::CcwlModel& model) {
    return ccwl::featurize(nilg::build_nilg(task, s), model);
}

}  // namespace

CostDataset build_cost_dataset(std::span<const PlanTrace> traces, const ccwl::CcwlModel& model) {
    CostDataset dataset;
    dataset.feature_dim = model.feature_length();
    for (const PlanTrace& trace : traces) {
        for (std::size_t j = 0; j < trace.states.size(); ++j) {
            dataset.features.push_back(embed(*trace.task, trace.states[j], model));
            dataset.targets.push_back(trace.cost_to_go[j]);
        }
    }
    return dataset;
}

RankingConstraintSet build_ranking_constraints(std::span<const PlanTrace> traces,
                                               const ccwl::CcwlModel& model) {
    RankingConstraintSet set;
    set.feature_dim = model.feature_length();
    auto difference = [](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        return d;
    };

    for (std::size_t t = 0; t < traces.size(); ++t) {
        const PlanTrace& trace = traces[t];
        std::vector<std::vector<double>> phi(trace.states.size());
        for (std::size_t j = 0; j < trace.states.size(); ++j)
            phi[j] = embed(*trace.task, trace.states[j], model);

        for (std::size_t j = 1; j < trace.states.size(); ++j) {
            RankingConstraint parent;
            parent.dphi = difference(phi[j - 1], phi[j]);
            parent.margin = trace.step_costs[j - 1];
            parent.trace = static_cast<int>(t);
            parent.step = static_cast<int>(j);
            parent.sibling = 0;
            set.constraints.push_back(std::move(parent));

            // Siblings: successor states of s_{j-1} other than s_j, one
            // constraint per distinct state.
            std::unordered_set<task::State, task::StateHash> seen;
            seen.insert(trace.states[j]);
            int sibling_index = 0;
            for (auto& [action, state] : task::successors(*trace.task, trace.states[j - 1])) {
                (void)action;
                if (!seen.insert(state).second) continue;
                RankingConstraint sibling;
                sibling.dphi = difference(embed(*trace.task, state, model), phi[j]);
                sibling.margin = 0.0;
                sibling.trace = static_cast<int>(t);
                sibling.step = static_cast<int>(j);
                sibling.sibling = ++sibling_index;
                set.constraints.push_back(std::move(sibling));
            }
        }
    }
    return set;
}

std::string to_csv(const CostDataset& dataset) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < dataset.feature_dim; ++i) os << "feature_" << i << ",";
    os << "target\n";
    for (std::size_t row = 0; row < dataset.features.size(); ++row) {
        for (double v : dataset.features[row]) os << v << ",";
        os << dataset.targets[row] << "\n";
    }
    return os.str();
}

std::string to_csv(const RankingConstraintSet& set) {
    std::ostringstream os;
    os.precision(17);
    os << "kind,i,j,k,margin";
    for (std::size_t i = 0; i < set.feature_dim; ++i) os << ",dphi_" << i;
    os << "\n";
    for (const RankingConstraint& c : set.constraints) {
        os << (c.sibling == 0 ? "parent" : "sibling") << "," << c.trace << "," << c.step << ","
           << c.sibling << "," << c.margin;
        for (double v : c.dphi) os << "," << v;
        os << "\n";
    }
    return os.str();
}

}  // namespace nplan::training
