#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cbm/maintenance_policy.hpp"

namespace cbm {

struct OptimizerConfig {
    int multistart_count = 16;
    int max_iterations = 500;  ///< per start
    double x_tol = 1e-6;       ///< simplex size, in box-normalized coordinates
    double f_tol = 1e-8;       ///< relative objective spread across the simplex
    double tau_min = 1e-3;
    double tau_max = 1e4;
    std::uint64_t seed = 0;
    int threads = 0;  ///< 0 = hardware concurrency

    void validate() const;
};

struct TracePoint {
    int iteration = 0;
    Policy policy;
    double cr = 0.0;
};

struct StartSummary {
    Policy start;
    double start_cr = 0.0;  ///< +inf when the start point could not be evaluated
    Policy best;
    double best_cr = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct OptimizationResult {
    Policy best_policy;
    CostBreakdown best_breakdown;
    int iterations_used = 0;  ///< summed over starts
    int starts_converged = 0;
    std::vector<TracePoint> trace;  ///< best vertex per iteration of the winning start
    std::vector<StartSummary> starts;
};

/// Objective over feasible policies. Throwing or returning a non-finite value
/// marks the point as unusable (treated as +inf).
using PolicyObjective = std::function<double(const Policy&)>;

/// Multistart bound-constrained Nelder-Mead over (tau, h2) in the box
/// [tau_min, tau_max] x prod [0, h1_i]; tau is searched on a log scale.
/// Start points are Latin-hypercube blocks of 8 over [tau bounds] x
/// prod [0.05 h1_i, 0.95 h1_i]; block b is seeded by (seed, b), so a larger
/// multistart_count only appends starts. With `fixed_tau`, only h2 moves.
/// best_breakdown carries only `cr`. Throws OptimizationError when no start
/// reaches a finite objective.
OptimizationResult minimize_policy_objective(const SystemModel& model, const PolicyObjective& objective,
                                             const OptimizerConfig& config,
                                             std::optional<double> fixed_tau = std::nullopt);

/// Minimizes the long-run cost rate jointly over tau and h2.
OptimizationResult optimize_policy(const SystemModel& model, const CostParams& costs, const OptimizerConfig& config,
                                   const TruncationConfig& trunc = {}, const SeriesTailConfig& tail = {});

/// Minimizes the cost rate over h2 with tau held fixed.
OptimizationResult optimize_fixed_tau(const SystemModel& model, const CostParams& costs, double tau,
                                      const OptimizerConfig& config, const TruncationConfig& trunc = {},
                                      const SeriesTailConfig& tail = {});

}  // namespace cbm
