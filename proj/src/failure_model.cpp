#include "cbm/failure_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbm/errors.hpp"

namespace cbm {

namespace {

void require_positive(double v, const std::string& what, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(what + ": " + field + " must be finite and > 0");
    }
}

}  // namespace

void ComponentParams::validate() const {
    const std::string what = "component '" + name + "'";
    require_positive(h1, what, "h1");
    require_positive(d, what, "d");
    require_positive(alpha, what, "alpha");
    require_positive(beta, what, "beta");
    require_positive(y_alpha, what, "y_alpha");
    require_positive(y_beta, what, "y_beta");
    require_positive(w_sigma, what, "w_sigma");
    if (!std::isfinite(w_mu)) throw DomainError(what + ": w_mu must be finite");
}

void SystemModel::validate() const {
    if (components.empty()) throw DomainError("system: at least one component is required");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("system: lambda must be finite and >= 0");
    for (const auto& c : components) c.validate();
}

void TruncationConfig::validate() const {
    if (!(poisson_tail_eps > 0.0 && poisson_tail_eps < 1.0)) {
        throw DomainError("truncation: poisson_tail_eps must lie in (0, 1)");
    }
    if (m_max_cap < 1) throw DomainError("truncation: m_max_cap must be >= 1");
    quadrature.validate();
}

ToleranceConfig term_tolerance(const ToleranceConfig& base, double weight) {
    ToleranceConfig t = base;
    if (weight > 0.0) t.abs_tol = std::min(0.5, base.abs_tol / weight);
    return t;
}

double shock_survival_prob(const ComponentParams& c) {
    return std_normal_cdf((c.d - c.w_mu) / c.w_sigma);
}

double pure_degradation_cdf(const ComponentParams& c, double x, double t) {
    if (!(x >= 0.0)) throw DomainError("pure_degradation_cdf: x must be >= 0");
    if (!(t >= 0.0)) throw DomainError("pure_degradation_cdf: t must be >= 0");
    return gamma_cdf(x, c.alpha * t, c.beta);
}

double damage_sum_density(const ComponentParams& c, int m, double u) {
    if (m < 1) throw DomainError("damage_sum_density: m must be >= 1 (m = 0 is a point mass)");
    return gamma_pdf(u, m * c.y_alpha, c.y_beta);
}

double threshold_cdf_given_m(const ComponentParams& c, double x, double t, int m, const ToleranceConfig& tol) {
    if (!(x >= 0.0)) throw DomainError("threshold_cdf_given_m: x must be >= 0");
    if (!(t >= 0.0)) throw DomainError("threshold_cdf_given_m: t must be >= 0");
    if (m < 0) throw DomainError("threshold_cdf_given_m: m must be >= 0");
    if (m == 0) return pure_degradation_cdf(c, x, t);
    if (x == 0.0) return 0.0;

    const double shape = m * c.y_alpha;
    const double rate = c.y_beta;
    // No wear yet: the convolution collapses onto the damage-sum CDF.
    if (t == 0.0) return gamma_cdf(x, shape, rate);

    const double wear_shape = c.alpha * t;
    const LowerGammaP wear_p(wear_shape);
    auto wear_cdf = [&](double w) { return w > 0.0 ? wear_p(c.beta * w) : 0.0; };
    const double log_norm = shape * std::log(rate) - log_gamma(shape);
    auto damage_pdf = [&](double u) {
        return u > 0.0 ? std::exp(log_norm + (shape - 1.0) * std::log(u) - rate * u) : 0.0;
    };
    ToleranceConfig half = tol;
    half.abs_tol = 0.5 * tol.abs_tol;

    // Lower half: the damage density is singular at 0 when shape < 1;
    // u = v^(1/shape) absorbs u^(shape - 1) du into dv / shape.
    double lower = 0.0;
    if (shape < 1.0) {
        const double log_norm_v = log_norm - std::log(shape);
        auto g = [&](double v) {
            const double u = std::pow(v, 1.0 / shape);
            return wear_cdf(x - u) * std::exp(log_norm_v - rate * u);
        };
        lower = adaptive_integrate(g, 0.0, std::pow(0.5 * x, shape), half).value;
    } else {
        auto g = [&](double u) { return wear_cdf(x - u) * damage_pdf(u); };
        lower = adaptive_integrate(g, 0.0, 0.5 * x, half, {shape, 1.0}).value;
    }

    // Upper half: the wear CDF behaves like (x - u)^(alpha t) at the end.
    auto h = [&](double u) { return wear_cdf(x - u) * damage_pdf(u); };
    const double upper = adaptive_integrate(h, 0.5 * x, x, half, {1.0, wear_shape + 1.0}).value;

    return std::clamp(lower + upper, 0.0, 1.0);
}

double total_degradation_cdf(const ComponentParams& c, double lambda, double x, double t,
                             const TruncationConfig& trunc) {
    if (!(x >= 0.0)) throw DomainError("total_degradation_cdf: x must be >= 0");
    if (!(t >= 0.0)) throw DomainError("total_degradation_cdf: t must be >= 0");
    const auto weights = poisson_weights(lambda * t, trunc.poisson_tail_eps, trunc.m_max_cap);
    double sum = 0.0;
    for (int m = 0; m < static_cast<int>(weights.size()); ++m) {
        if (weights[m] == 0.0) continue;
        sum += weights[m] * threshold_cdf_given_m(c, x, t, m, term_tolerance(trunc.quadrature, weights[m]));
    }
    return std::clamp(sum, 0.0, 1.0);
}

EventProbabilities event_probabilities(const ComponentParams& c, double lambda, double t, double h2,
                                       const TruncationConfig& trunc) {
    if (!(h2 >= 0.0)) throw DomainError("event_probabilities: h2 must be >= 0");
    if (h2 > c.h1) throw DomainError("event_probabilities: h2 > h1 for component '" + c.name + "'");
    if (!(t >= 0.0)) throw DomainError("event_probabilities: t must be >= 0");

    const auto weights = poisson_weights(lambda * t, trunc.poisson_tail_eps, trunc.m_max_cap);
    const double survive = shock_survival_prob(c);
    double safe = 0.0;
    double degraded = 0.0;
    double survive_m = 1.0;
    for (int m = 0; m < static_cast<int>(weights.size()); ++m) {
        const double w = weights[m] * survive_m;
        survive_m *= survive;
        if (w == 0.0) continue;
        const auto tol = term_tolerance(trunc.quadrature, w);
        const double below_h2 = threshold_cdf_given_m(c, h2, t, m, tol);
        const double below_h1 = h2 == c.h1 ? below_h2 : threshold_cdf_given_m(c, c.h1, t, m, tol);
        safe += w * below_h2;
        degraded += w * (below_h1 - below_h2);
    }
    EventProbabilities p;
    p.safe = std::clamp(safe, 0.0, 1.0);
    p.degraded = std::clamp(degraded, 0.0, 1.0 - p.safe);
    p.failed = 1.0 - p.safe - p.degraded;
    return p;
}

}  // namespace cbm
