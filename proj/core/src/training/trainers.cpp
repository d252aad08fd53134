#include "nplan/training/trainers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nplan::training {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l1_norm(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += std::fabs(v);
    return s;
}

LinearHeuristic solve_ridge(const CostDataset& dataset, double lambda) {
    const auto rows = static_cast<Eigen::Index>(dataset.features.size());
    const auto dim = static_cast<Eigen::Index>(dataset.feature_dim);

    Eigen::MatrixXd design(rows, dim + 1);
    Eigen::VectorXd targets(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c)
            design(r, c) = dataset.features[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        design(r, dim) = 1.0;  // bias column, unregularized
        targets(r) = dataset.targets[static_cast<std::size_t>(r)];
    }

    Eigen::MatrixXd normal = design.transpose() * design;
    for (Eigen::Index c = 0; c < dim; ++c) normal(c, c) += lambda;
    Eigen::VectorXd solution = normal.ldlt().solve(design.transpose() * targets);

    LinearHeuristic model;
    model.method = "cost";
    model.weights.assign(solution.data(), solution.data() + dim);
    model.bias = solution(dim);
    Eigen::VectorXd residual = design * solution - targets;
    model.objective = residual.squaredNorm() / static_cast<double>(rows) +
                      lambda * solution.head(dim).squaredNorm();
    model.iterations = 1;
    return model;
}

LinearHeuristic solve_epsilon_insensitive(const CostDataset& dataset,
                                          const CostTrainConfig& config) {
    const std::size_t rows = dataset.features.size();
    const std::size_t dim = dataset.feature_dim;
    const double n = static_cast<double>(rows);

    std::vector<double> w(dim, 0.0);
    double b = 0.0;

    auto objective = [&](const std::vector<double>& weights, double bias) {
        double loss = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            double residual = std::fabs(dataset.targets[r] - dot(weights, dataset.features[r]) - bias);
            loss += std::max(0.0, residual - config.epsilon);
        }
        double reg = 0.0;
        for (double v : weights) reg += v * v;
        return loss / n + config.lambda * reg;
    };

    std::vector<double> best_w = w;
    double best_b = b;
    double best_obj = objective(w, b);
    int stall = 0;
    int iteration = 0;
    std::vector<double> grad(dim);

    for (; iteration < config.max_iterations && stall < config.patience; ++iteration) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            double residual = dataset.targets[r] - dot(w, dataset.features[r]) - b;
            if (std::fabs(residual) <= config.epsilon) continue;
            double sign = residual > 0.0 ? -1.0 : 1.0;
            for (std::size_t c = 0; c < dim; ++c) grad[c] += sign * dataset.features[r][c] / n;
            grad_b += sign / n;
        }
        for (std::size_t c = 0; c < dim; ++c) grad[c] += 2.0 * config.lambda * w[c];

        double step = config.eta0 / std::sqrt(static_cast<double>(iteration + 1));
        for (std::size_t c = 0; c < dim; ++c) w[c] -= step * grad[c];
        b -= step * grad_b;

        double obj = objective(w, b);
        if (obj < best_obj - config.tolerance) {
            best_obj = obj;
            best_w = w;
            best_b = b;
            stall = 0;
        } else {
            if (obj < best_obj) {
                best_obj = obj;
                best_w = w;
                best_b = b;
            }
            ++stall;
        }
    }

    LinearHeuristic model;
    model.method = "cost";
    model.weights = std::move(best_w);
    model.bias = best_b;
    model.objective = best_obj;
    model.iterations = iteration;
    model.converged = stall >= config.patience;
    return model;
}

}  // namespace

LinearHeuristic train_cost_to_go(const CostDataset& dataset, const CostTrainConfig& config) {
    if (dataset.features.empty()) throw std::invalid_argument("cost dataset is empty");
    if (config.loss == CostLoss::squared) return solve_ridge(dataset, config.lambda);
    return solve_epsilon_insensitive(dataset, config);
}

double ranking_objective(const std::vector<double>& w, const RankingConstraintSet& constraints,
                         double l1_weight) {
    double objective = l1_weight * l1_norm(w);
    for (const RankingConstraint& c : constraints.constraints)
        objective += std::max(0.0, c.margin - dot(w, c.dphi));
    return objective;
}

std::vector<double> optimal_slacks(const std::vector<double>& w,
                                   const RankingConstraintSet& constraints) {
    std::vector<double> slacks;
    slacks.reserve(constraints.constraints.size());
    for (const RankingConstraint& c : constraints.constraints)
        slacks.push_back(std::max(0.0, c.margin - dot(w, c.dphi)));
    return slacks;
}

namespace {

// Exact minimization of the hinge objective along one coordinate. The
// restriction to w_i is convex piecewise linear; the slope scan over sorted
// breakpoints finds the first point with non-negative right slope.
// residuals[c] tracks margin_c - w . dphi_c and is updated on a move.
bool minimize_coordinate(std::size_t i, std::vector<double>& w, std::vector<double>& residuals,
                         const RankingConstraintSet& set, double l1_weight) {
    double left_slope = -l1_weight;
    std::vector<std::pair<double, double>> events;  // (breakpoint, slope increment)
    if (l1_weight > 0.0) events.emplace_back(0.0, 2.0 * l1_weight);
    for (std::size_t c = 0; c < set.constraints.size(); ++c) {
        double beta = set.constraints[c].dphi[i];
        if (beta == 0.0) continue;
        double alpha = residuals[c] + w[i] * beta;  // hinge active iff alpha - beta * t > 0
        events.emplace_back(alpha / beta, std::fabs(beta));
        if (beta > 0.0) left_slope -= beta;
    }
    if (events.empty()) return false;
    std::sort(events.begin(), events.end());

    double slope = left_slope;
    double best_t = w[i];
    bool found = false;
    for (const auto& [t, increment] : events) {
        slope += increment;
        if (slope >= 0.0) {
            best_t = t;
            found = true;
            break;
        }
    }
    if (!found || best_t == w[i]) return false;

    double delta = w[i] - best_t;
    for (std::size_t c = 0; c < set.constraints.size(); ++c)
        residuals[c] += delta * set.constraints[c].dphi[i];
    w[i] = best_t;
    return true;
}

void polish(std::vector<double>& w, const RankingConstraintSet& set, double l1_weight) {
    const std::size_t dim = w.size();
    std::vector<double> residuals(set.constraints.size());
    for (std::size_t c = 0; c < set.constraints.size(); ++c)
        residuals[c] = set.constraints[c].margin - dot(w, set.constraints[c].dphi);

    double previous = ranking_objective(w, set, l1_weight);
    for (int pass = 0; pass < 200; ++pass) {
        bool moved = false;
        for (std::size_t i = 0; i < dim; ++i)
            moved = minimize_coordinate(i, w, residuals, set, l1_weight) || moved;
        if (!moved) break;
        double current = ranking_objective(w, set, l1_weight);
        if (current > previous - 1e-13) break;
        previous = current;
    }
}

}  // namespace

RankTrainResult train_ranking(const RankingConstraintSet& constraints,
                              const RankTrainConfig& config) {
    const std::size_t dim = constraints.feature_dim;
    std::vector<double> w(dim, 0.0);

    RankTrainResult result;
    result.model.method = "rank";
    result.model.bias = 0.0;

    double best_obj = ranking_objective(w, constraints, config.l1_weight);
    std::vector<double> best_w = w;
    int total_iterations = 0;
    bool converged = true;

    std::vector<double> grad(dim);
    // Alternate subgradient descent with exact coordinate polish; the polish
    // also escapes nothing on its own, so the descent phase restarts from the
    // polished point with a smaller step.
    const int rounds = config.polish ? 3 : 1;
    for (int round = 0; round < rounds && !constraints.constraints.empty() && dim > 0; ++round) {
        double eta0 = config.eta0 / std::pow(10.0, round);
        int stall = 0;
        int iteration = 0;
        for (; iteration < config.max_iterations && stall < config.patience; ++iteration) {
            std::fill(grad.begin(), grad.end(), 0.0);
            for (const RankingConstraint& c : constraints.constraints) {
                if (c.margin - dot(w, c.dphi) <= 0.0) continue;
                for (std::size_t i = 0; i < dim; ++i) grad[i] -= c.dphi[i];
            }
            for (std::size_t i = 0; i < dim; ++i) {
                if (w[i] > 0.0) grad[i] += config.l1_weight;
                else if (w[i] < 0.0) grad[i] -= config.l1_weight;
            }
            double step = eta0 / std::sqrt(static_cast<double>(iteration + 1));
            for (std::size_t i = 0; i < dim; ++i) w[i] -= step * grad[i];

            double obj = ranking_objective(w, constraints, config.l1_weight);
            if (obj < best_obj - config.tolerance) {
                best_obj = obj;
                best_w = w;
                stall = 0;
            } else {
                if (obj < best_obj) {
                    best_obj = obj;
                    best_w = w;
                }
                ++stall;
            }
        }
        total_iterations += iteration;
        if (iteration >= config.max_iterations && stall < config.patience) converged = false;

        if (config.polish) {
            w = best_w;
            polish(w, constraints, config.l1_weight);
            double obj = ranking_objective(w, constraints, config.l1_weight);
            if (obj < best_obj) {
                best_obj = obj;
                best_w = w;
            }
        }
        w = best_w;
    }

    result.model.weights = std::move(best_w);
    result.model.objective = best_obj;
    result.model.iterations = total_iterations;
    result.model.converged = converged;
    result.slacks = optimal_slacks(result.model.weights, constraints);
    return result;
}

}  // namespace nplan::training
