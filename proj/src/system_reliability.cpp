#include "cbm/system_reliability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cbm/errors.hpp"

namespace cbm {

namespace {

bool same_law(const ComponentParams& a, const ComponentParams& b) {
    return a.h1 == b.h1 && a.d == b.d && a.alpha == b.alpha && a.beta == b.beta && a.y_alpha == b.y_alpha &&
           a.y_beta == b.y_beta && a.w_mu == b.w_mu && a.w_sigma == b.w_sigma;
}

}  // namespace

ThresholdVector critical_thresholds(const SystemModel& model) {
    ThresholdVector h;
    h.values.reserve(model.size());
    for (const auto& c : model.components) h.values.push_back(c.h1);
    return h;
}

void validate_thresholds(const SystemModel& model, const ThresholdVector& thresholds) {
    if (thresholds.size() != model.size()) {
        throw DomainError("threshold vector has " + std::to_string(thresholds.size()) + " entries, system has " +
                          std::to_string(model.size()) + " components");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0)) throw DomainError("h2[" + std::to_string(i) + "] must be >= 0");
        if (thresholds[i] > model.components[i].h1) {
            throw DomainError("h2[" + std::to_string(i) + "] > h1[" + std::to_string(i) + "]");
        }
    }
}

double series_survival(const SystemModel& model, double t, const ThresholdVector& thresholds,
                       const TruncationConfig& trunc) {
    if (!(t >= 0.0)) throw DomainError("series_survival: t must be >= 0");
    validate_thresholds(model, thresholds);
    if (t == 0.0) return 1.0;

    const auto weights = poisson_weights(model.lambda * t, trunc.poisson_tail_eps, trunc.m_max_cap);
    std::vector<double> survive(model.size());
    // Components identical in law and threshold share one evaluation.
    std::vector<std::size_t> twin(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
        survive[i] = shock_survival_prob(model.components[i]);
        twin[i] = i;
        for (std::size_t j = 0; j < i; ++j) {
            if (thresholds[j] == thresholds[i] && same_law(model.components[j], model.components[i])) {
                twin[i] = j;
                break;
            }
        }
    }

    std::vector<double> factor(model.size());
    double sum = 0.0;
    for (int m = 0; m < static_cast<int>(weights.size()); ++m) {
        if (weights[m] == 0.0) continue;
        const auto tol = term_tolerance(trunc.quadrature, weights[m]);
        double product = 1.0;
        for (std::size_t i = 0; i < model.size() && product > 0.0; ++i) {
            const auto& c = model.components[i];
            factor[i] = twin[i] == i ? std::pow(survive[i], m) * threshold_cdf_given_m(c, thresholds[i], t, m, tol)
                                     : factor[twin[i]];
            product *= factor[i];
        }
        sum += weights[m] * product;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double failure_time_cdf(const SystemModel& model, double t, const TruncationConfig& trunc) {
    return 1.0 - series_survival(model, t, critical_thresholds(model), trunc);
}

double detection_time_cdf(const SystemModel& model, double t, const ThresholdVector& h2,
                          const TruncationConfig& trunc) {
    return 1.0 - series_survival(model, t, h2, trunc);
}

std::vector<std::pair<double, double>> reliability_curve(const SystemModel& model, const std::vector<double>& t_grid,
                                                         const ThresholdVector& thresholds,
                                                         const TruncationConfig& trunc) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(t_grid.size());
    double previous_t = 0.0;
    for (double t : t_grid) {
        if (!(t >= 0.0) || t < previous_t) {
            throw DomainError("reliability_curve: t_grid must be nonnegative and nondecreasing");
        }
        previous_t = t;
        curve.emplace_back(t, series_survival(model, t, thresholds, trunc));
    }
    return curve;
}

}  // namespace cbm
