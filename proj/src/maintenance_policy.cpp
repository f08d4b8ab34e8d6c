#include "cbm/maintenance_policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cbm/errors.hpp"
#include "cbm/simulator.hpp"

namespace cbm {

namespace {

// F2(k tau) for k = 0..K, K the first index whose survival drops below k_tail_eps.
std::vector<double> detection_series(const SystemModel& model, const Policy& policy, const TruncationConfig& trunc,
                                     const SeriesTailConfig& tail) {
    std::vector<double> f2{0.0};
    for (long k = 1;; ++k) {
        if (k > tail.k_max_cap) {
            throw TruncationError("detection probability did not approach 1 within k_max_cap = " +
                                  std::to_string(tail.k_max_cap) + " inspections (tau = " +
                                  std::to_string(policy.tau) + ")");
        }
        const double f = detection_time_cdf(model, k * policy.tau, policy.h2, trunc);
        f2.push_back(f);
        if (1.0 - f < tail.k_tail_eps) return f2;
    }
}

double inspections_from_series(const std::vector<double>& f2) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < f2.size(); ++k) sum += 1.0 - f2[k];
    return sum;
}

double paper_downtime_from_series(const SystemModel& model, const Policy& policy, const std::vector<double>& f2,
                                  const TruncationConfig& trunc) {
    ToleranceConfig tol = trunc.quadrature;
    tol.abs_tol *= policy.tau;
    double total = 0.0;
    double f1_start = 0.0;  // F1(0)
    for (std::size_t k = 1; k < f2.size(); ++k) {
        const double start = (k - 1) * policy.tau;
        const double end = k * policy.tau;
        const double f1_end = failure_time_cdf(model, end, trunc);
        const double weight = std::max(0.0, f2[k] - f2[k - 1]);
        // The term is at most weight * tau * (1 - F1(start)); below the absolute target it is dropped.
        if (weight * (1.0 - f1_start) > trunc.quadrature.abs_tol && f1_end > f1_start) {
            // int_start^end (end - t) dF1(t) = int_start^end (F1(t) - F1(start)) dt
            auto integrand = [&](double t) { return failure_time_cdf(model, t, trunc) - f1_start; };
            // Only weight * interval enters the sum, so the absolute target scales with 1 / weight.
            const double interval = adaptive_integrate(integrand, start, end, term_tolerance(tol, weight)).value;
            total += weight * std::clamp(interval, 0.0, policy.tau);
        }
        f1_start = f1_end;
    }
    return total;
}

}  // namespace

void CostParams::validate() const {
    if (!(c_i >= 0.0) || !std::isfinite(c_i)) throw DomainError("costs.c_i must be finite and >= 0");
    if (!(c_rho >= 0.0) || !std::isfinite(c_rho)) throw DomainError("costs.c_rho must be finite and >= 0");
    if (!(c_r >= 0.0) || !std::isfinite(c_r)) throw DomainError("costs.c_r must be finite and >= 0");
}

void Policy::validate(const SystemModel& model) const {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("policy.tau must be finite and > 0");
    validate_thresholds(model, h2);
}

void SeriesTailConfig::validate() const {
    if (!(k_tail_eps > 0.0 && k_tail_eps < 1.0)) throw DomainError("tail: k_tail_eps must lie in (0, 1)");
    if (k_max_cap < 1) throw DomainError("tail: k_max_cap must be >= 1");
}

double expected_inspections(const SystemModel& model, const Policy& policy, const TruncationConfig& trunc,
                            const SeriesTailConfig& tail) {
    policy.validate(model);
    return inspections_from_series(detection_series(model, policy, trunc, tail));
}

double expected_downtime(const SystemModel& model, const Policy& policy, const TruncationConfig& trunc,
                         const SeriesTailConfig& tail, DowntimeMode mode, const SimulationConfig* sim) {
    policy.validate(model);
    if (mode == DowntimeMode::pathwise_mc_reference) {
        if (!sim) throw DomainError("expected_downtime: pathwise_mc_reference mode needs a SimulationConfig");
        return estimate_cost_rate(model, policy, CostParams{}, *sim).mean_downtime;
    }
    const auto f2 = detection_series(model, policy, trunc, tail);
    return paper_downtime_from_series(model, policy, f2, trunc);
}

double expected_cycle_length(const SystemModel& model, const Policy& policy, const TruncationConfig& trunc,
                             const SeriesTailConfig& tail) {
    return policy.tau * expected_inspections(model, policy, trunc, tail);
}

CostBreakdown cost_rate(const SystemModel& model, const Policy& policy, const CostParams& costs,
                        const TruncationConfig& trunc, const SeriesTailConfig& tail) {
    policy.validate(model);
    costs.validate();
    const auto f2 = detection_series(model, policy, trunc, tail);
    CostBreakdown b;
    b.inspections_summed = static_cast<int>(f2.size()) - 1;
    b.e_ni = inspections_from_series(f2);
    b.e_rho = paper_downtime_from_series(model, policy, f2, trunc);
    b.e_k = policy.tau * b.e_ni;
    b.e_tc = costs.c_i * b.e_ni + costs.c_rho * b.e_rho + costs.c_r;
    b.cr = b.e_tc / b.e_k;
    return b;
}

}  // namespace cbm
