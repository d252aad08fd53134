#pragma once

#include <span>
#include <string>
#include <vector>

#include "nplan/ccwl/ccwl.hpp"
#include "nplan/training/trace.hpp"

namespace nplan::training {

struct CostDataset {
    std::size_t feature_dim = 0;
    std::vector<std::vector<double>> features;  // one row per trace state
    std::vector<double> targets;                // cost-to-go
};

// Embeds every trace state with the fitted model; the graph is built for the
// task whose initial state is that state.
CostDataset build_cost_dataset(std::span<const PlanTrace> traces, const ccwl::CcwlModel& model);

// One ranking constraint: w . dphi >= margin, softened by a slack.
// sibling == 0 tags the parent constraint of the step; siblings are numbered
// from 1 in deduplicated successor order.
struct RankingConstraint {
    std::vector<double> dphi;
    double margin = 0.0;
    int trace = 0;
    int step = 0;
    int sibling = 0;
};

struct RankingConstraintSet {
    std::size_t feature_dim = 0;
    std::vector<RankingConstraint> constraints;
};

// Per trace step j: one parent constraint (phi(s_{j-1}) - phi(s_j), margin
// cost(a_j)) and one zero-margin constraint per sibling, i.e. per successor
// state of s_{j-1} other than s_j. Duplicate successor states collapse before
// sibling emission.
RankingConstraintSet build_ranking_constraints(std::span<const PlanTrace> traces,
                                               const ccwl::CcwlModel& model);

std::string to_csv(const CostDataset& dataset);
std::string to_csv(const RankingConstraintSet& constraints);

}  // namespace nplan::training
