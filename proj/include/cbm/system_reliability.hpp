#pragma once

#include <utility>
#include <vector>

#include "cbm/failure_model.hpp"

namespace cbm {

/// Per-component degradation thresholds, in component order.
struct ThresholdVector {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// The critical soft-failure thresholds h1 of every component.
ThresholdVector critical_thresholds(const SystemModel& model);

/// Throws DomainError unless thresholds has one entry per component with
/// 0 <= values[i] <= components[i].h1.
void validate_thresholds(const SystemModel& model, const ThresholdVector& thresholds);

/// Probability that by time t no component has hard-failed and every
/// component's total degradation is below its threshold. Components are
/// conditionally independent given the shared shock count, so the product
/// over components sits inside the sum over shock counts.
double series_survival(const SystemModel& model, double t, const ThresholdVector& thresholds,
                       const TruncationConfig& trunc = {});

/// CDF of the system failure time (thresholds h1).
double failure_time_cdf(const SystemModel& model, double t, const TruncationConfig& trunc = {});

/// CDF of the first time any on-condition threshold h2 is reached (or a hard
/// failure occurs).
double detection_time_cdf(const SystemModel& model, double t, const ThresholdVector& h2,
                          const TruncationConfig& trunc = {});

std::vector<std::pair<double, double>> reliability_curve(const SystemModel& model, const std::vector<double>& t_grid,
                                                         const ThresholdVector& thresholds,
                                                         const TruncationConfig& trunc = {});

}  // namespace cbm
