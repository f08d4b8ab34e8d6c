#pragma once

#include "cbm/system_reliability.hpp"

namespace cbm {

struct SimulationConfig;

struct CostParams {
    double c_i = 0.0;    ///< cost per inspection
    double c_rho = 0.0;  ///< downtime penalty per hour
    double c_r = 0.0;    ///< cost per system replacement

    void validate() const;
};

/// Periodic inspection every `tau` hours; replace the system at the first
/// inspection where any component is at or above its h2 entry, or has failed.
struct Policy {
    double tau = 0.0;
    ThresholdVector h2;

    void validate(const SystemModel& model) const;
};

/// Per-renewal-cycle expectations and the long-run cost rate.
struct CostBreakdown {
    double e_ni = 0.0;   ///< expected inspections per cycle
    double e_rho = 0.0;  ///< expected downtime hours per cycle
    double e_k = 0.0;    ///< expected cycle length, hours
    double e_tc = 0.0;   ///< expected cost per cycle
    double cr = 0.0;     ///< cost per hour
    int inspections_summed = 0;  ///< k at which the inspection series was cut
};

/// Truncation of the sums over the inspection index k.
struct SeriesTailConfig {
    double k_tail_eps = 1e-9;
    long k_max_cap = 1000000;

    void validate() const;
};

enum class DowntimeMode {
    /// sum_k P(N_I = k) * int_{(k-1)tau}^{k tau} (k tau - t) dF_T^{H1}(t),
    /// exactly as the cost-rate objective is written.
    paper,
    /// Mean downtime of simulated renewal cycles.
    pathwise_mc_reference,
};

/// E[N_I] = sum_k k (F2(k tau) - F2((k-1) tau)).
///
/// Evaluated in the equivalent survival form sum_{k>=0} (1 - F2(k tau)),
/// which keeps the truncated value >= 1. The sum stops at the first k with
/// 1 - F2(k tau) < k_tail_eps; TruncationError past k_max_cap.
double expected_inspections(const SystemModel& model, const Policy& policy, const TruncationConfig& trunc = {},
                            const SeriesTailConfig& tail = {});

/// Expected downtime per cycle. The Stieltjes integral over each inspection
/// interval is taken by parts: int F1 dt - tau F1((k-1) tau).
/// `sim` is required for DowntimeMode::pathwise_mc_reference.
double expected_downtime(const SystemModel& model, const Policy& policy, const TruncationConfig& trunc = {},
                         const SeriesTailConfig& tail = {}, DowntimeMode mode = DowntimeMode::paper,
                         const SimulationConfig* sim = nullptr);

/// E[K] = tau * E[N_I].
double expected_cycle_length(const SystemModel& model, const Policy& policy, const TruncationConfig& trunc = {},
                             const SeriesTailConfig& tail = {});

/// Full breakdown with CR = (C_I E[N_I] + C_rho E[rho] + C_R) / E[K].
CostBreakdown cost_rate(const SystemModel& model, const Policy& policy, const CostParams& costs,
                        const TruncationConfig& trunc = {}, const SeriesTailConfig& tail = {});

}  // namespace cbm
