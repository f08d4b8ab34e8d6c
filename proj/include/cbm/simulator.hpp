#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cbm/maintenance_policy.hpp"
#include "cbm/random.hpp"

namespace cbm {

struct SimulationConfig {
    long replications = 100000;
    std::uint64_t seed = 0;
    /// Resolution for locating soft-failure crossings. Defaults to tau / 1024
    /// for cycle simulation and horizon / 2^24 for first-passage curves.
    std::optional<double> sub_step;
    long horizon_cap = 1000000;  ///< max inspections per cycle
    int threads = 0;             ///< 0 = hardware concurrency

    void validate() const;
};

enum class FailureKind { none, soft, hard };

const char* to_string(FailureKind kind);

struct CycleOutcome {
    long inspections = 0;
    double cycle_length = 0.0;
    double downtime = 0.0;
    bool ended_preventively = false;
    std::optional<double> failure_time;
    FailureKind failure_kind = FailureKind::none;
};

struct SimulationEstimate {
    long replications = 0;
    double mean_cr = 0.0;
    double stderr_cr = 0.0;  ///< NaN when replications < 2
    double mean_inspections = 0.0;
    double mean_downtime = 0.0;
    double stderr_downtime = 0.0;  ///< NaN when replications < 2
    double mean_cycle_length = 0.0;
    double mean_total_cost = 0.0;
    double preventive_fraction = 0.0;
    double hard_failure_fraction = 0.0;
    double soft_failure_fraction = 0.0;
};

/// One renewal cycle under the periodic inspection policy.
///
/// Shocks arrive as a Poisson process and hit every component. A shock with
/// W >= D is a hard failure at the shock instant; otherwise its damage Y is
/// added. Wear between events is sampled as exact gamma increments. A soft
/// failure inside a wear segment is located by gamma-bridge bisection down to
/// `sub_step`, and reported at the right end of the final bracket, so
/// crossings are never early. The cycle ends at the first inspection where a
/// failure has occurred or any level is >= h2.
CycleOutcome simulate_cycle(const SystemModel& model, const Policy& policy, RandomStream& rng,
                            const SimulationConfig& sim = {});

/// Renewal-reward ratio sum(TC) / sum(K) over independent cycles, with a
/// delta-method standard error. Replication j uses substream (seed, j).
SimulationEstimate estimate_cost_rate(const SystemModel& model, const Policy& policy, const CostParams& costs,
                                      const SimulationConfig& sim);

/// First time any component reaches its threshold or hard-fails; +inf when
/// that does not happen before `horizon`.
double simulate_first_passage(const SystemModel& model, const ThresholdVector& thresholds, double horizon,
                              double sub_step, RandomStream& rng);

/// Empirical CDF of the first-passage time on t_grid.
std::vector<std::pair<double, double>> empirical_first_passage_cdf(const SystemModel& model,
                                                                   const ThresholdVector& thresholds,
                                                                   const SimulationConfig& sim,
                                                                   const std::vector<double>& t_grid);

}  // namespace cbm
