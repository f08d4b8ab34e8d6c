#pragma once

#include <string>
#include <vector>

#include "cbm/numerics.hpp"

namespace cbm {

/// One component's degradation, shock and threshold parameters.
///
/// Units are fixed by convention: degradation volume in um^3, shock
/// magnitude in GPa, time in hours. `beta` and `y_beta` are rates, so the
/// mean pure degradation at time t is alpha * t / beta.
struct ComponentParams {
    std::string name;
    double h1 = 0.0;       ///< soft-failure threshold on total degradation
    double d = 0.0;        ///< hard-failure threshold on shock magnitude
    double alpha = 0.0;    ///< gamma-process shape per hour
    double beta = 0.0;     ///< gamma-process rate
    double y_alpha = 0.0;  ///< shape of the per-shock damage
    double y_beta = 0.0;   ///< rate of the per-shock damage
    double w_mu = 0.0;     ///< mean shock magnitude
    double w_sigma = 0.0;  ///< shock magnitude standard deviation

    void validate() const;
};

/// Series system: every shock hits every component.
struct SystemModel {
    std::vector<ComponentParams> components;
    double lambda = 0.0;  ///< shock arrival rate per hour

    std::size_t size() const { return components.size(); }
    void validate() const;
};

/// Truncation of the sums over the shock count m.
struct TruncationConfig {
    double poisson_tail_eps = 1e-12;
    int m_max_cap = 200;
    ToleranceConfig quadrature{};

    void validate() const;
};

/// Status probabilities of one component at time t (safe / degraded / failed).
struct EventProbabilities {
    double safe = 0.0;      ///< no hard failure and total degradation below h2
    double degraded = 0.0;  ///< no hard failure, degradation between h2 and h1
    double failed = 0.0;    ///< hard failure or degradation above h1
};

/// P(W < D) for a single shock.
double shock_survival_prob(const ComponentParams& c);

/// P(X(t) <= x) for the pure gamma-process wear.
double pure_degradation_cdf(const ComponentParams& c, double x, double t);

/// Density of the sum of m i.i.d. shock damages (gamma with shape m * y_alpha).
double damage_sum_density(const ComponentParams& c, int m, double u);

/// P(X(t) + Y_1 + ... + Y_m <= x), the convolution of the wear CDF with the
/// m-fold damage density.
double threshold_cdf_given_m(const ComponentParams& c, double x, double t, int m,
                             const ToleranceConfig& tol = {});

/// P(total degradation at t <= x), mixing threshold_cdf_given_m over the
/// Poisson shock count.
double total_degradation_cdf(const ComponentParams& c, double lambda, double x, double t,
                             const TruncationConfig& trunc = {});

EventProbabilities event_probabilities(const ComponentParams& c, double lambda, double t, double h2,
                                       const TruncationConfig& trunc = {});

/// Tolerance for one term of a Poisson-weighted sum: its absolute error is
/// scaled so that weight * error stays at the base absolute tolerance.
ToleranceConfig term_tolerance(const ToleranceConfig& base, double weight);

}  // namespace cbm
