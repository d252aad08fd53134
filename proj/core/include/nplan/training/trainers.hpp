#pragma once

#include <string>
#include <vector>

#include "nplan/training/dataset.hpp"

namespace nplan::training {

// Linear heuristic model over the CCWL feature space.
struct LinearHeuristic {
    std::vector<double> weights;
    double bias = 0.0;
    std::string method;  // "cost" or "rank"
    double objective = 0.0;
    int iterations = 0;
    bool converged = true;
};

enum class CostLoss : std::uint8_t { squared, epsilon_insensitive };

struct CostTrainConfig {
    double lambda = 1e-4;  // ridge weight (bias unregularized)
    CostLoss loss = CostLoss::squared;
    double epsilon = 0.1;
    double eta0 = 1.0;
    int max_iterations = 50'000;
    double tolerance = 1e-6;
    int patience = 100;
};

// Squared loss solves the ridge normal equations; the epsilon-insensitive
// variant runs subgradient descent with an eta0/sqrt(t) schedule.
LinearHeuristic train_cost_to_go(const CostDataset& dataset, const CostTrainConfig& config = {});

struct RankTrainConfig {
    double l1_weight = 0.01;
    double eta0 = 1.0;
    int max_iterations = 50'000;
    double tolerance = 1e-6;
    int patience = 100;  // stop after this many iterations without improvement
    bool polish = true;  // exact coordinate minimization after descent
};

struct RankTrainResult {
    LinearHeuristic model;             // bias fixed at 0
    std::vector<double> slacks;        // residual hinge per constraint
};

// Minimizes sum_parent max(0, margin - w.dphi) + sum_sibling max(0, -w.dphi)
// + l1_weight * |w|_1, whose optimum equals the slack LP's. Subgradient
// descent tracks the best iterate; an exact piecewise-linear coordinate pass
// then polishes it (the plain eta0/sqrt(t) schedule alone does not reach
// tight tolerances).
RankTrainResult train_ranking(const RankingConstraintSet& constraints,
                              const RankTrainConfig& config = {});

// Objective of the hinge formulation at w.
double ranking_objective(const std::vector<double>& w, const RankingConstraintSet& constraints,
                         double l1_weight);

// Minimal feasible slack per constraint at fixed w: max(0, margin - w.dphi).
std::vector<double> optimal_slacks(const std::vector<double>& w,
                                   const RankingConstraintSet& constraints);

}  // namespace nplan::training
