#include "cbm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cbm/errors.hpp"
#include "parallel.hpp"

namespace cbm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Degradation and shock history of one system, walked forward in time until
// the first component reaches its threshold or hard-fails.
class PathWalker {
public:
    PathWalker(const SystemModel& model, const ThresholdVector& thresholds, double sub_step, RandomStream& rng)
        : model_(model),
          thresholds_(thresholds),
          sub_step_(sub_step),
          rng_(rng),
          bridge_seed_(rng()),
          level_(model.size(), 0.0) {
        next_shock_ = model.lambda > 0.0 ? sample_exponential(model.lambda, rng_) : kInf;
    }

    // Moves the path to time t, processing every shock in (now, t].
    void advance(double t) {
        while (!failed() && next_shock_ <= t) {
            wear_to(next_shock_);
            if (failed()) return;
            shock(next_shock_);
            next_shock_ += sample_exponential(model_.lambda, rng_);
        }
        if (!failed()) wear_to(t);
    }

    bool failed() const { return kind_ != FailureKind::none; }
    double failure_time() const { return failure_time_; }
    FailureKind kind() const { return kind_; }
    double level(std::size_t i) const { return level_[i]; }

private:
    void wear_to(double t) {
        const double dt = t - now_;
        if (!(dt > 0.0)) return;
        double first = kInf;
        for (std::size_t i = 0; i < model_.size(); ++i) {
            const auto& c = model_.components[i];
            const double next = level_[i] + sample_gamma(c.alpha * dt, c.beta, rng_);
            if (next >= thresholds_[i]) first = std::min(first, locate(i, level_[i], next, t));
            level_[i] = next;
        }
        if (first < kInf) {
            kind_ = FailureKind::soft;
            failure_time_ = first;
        }
        now_ = t;
        ++segment_;
    }

    // Bisects (now, end] with gamma-bridge draws until the bracket holding the
    // crossing is at most sub_step wide; returns its right end. Each
    // (segment, component) pair owns a bridge stream, so halving sub_step
    // replays the same draws and adds one level.
    double locate(std::size_t i, double level_lo, double level_hi, double end) {
        const double alpha = model_.components[i].alpha;
        const double threshold = thresholds_[i];
        RandomStream bridge = RandomStream::substream(bridge_seed_, segment_ * model_.size() + i);
        double lo = now_;
        double hi = end;
        double width = end - now_;
        while (width > sub_step_) {
            width *= 0.5;
            const double mid = lo + 0.5 * (hi - lo);
            if (!(mid > lo && mid < hi)) break;
            const double frac = sample_beta(alpha * (mid - lo), alpha * (hi - mid), bridge);
            const double level_mid = level_lo + (level_hi - level_lo) * frac;
            if (level_mid >= threshold) {
                hi = mid;
                level_hi = level_mid;
            } else {
                lo = mid;
                level_lo = level_mid;
            }
        }
        return hi;
    }

    void shock(double s) {
        bool hard = false;
        for (const auto& c : model_.components) {
            if (sample_normal(c.w_mu, c.w_sigma, rng_) >= c.d) hard = true;
        }
        if (hard) {
            kind_ = FailureKind::hard;
            failure_time_ = s;
            return;
        }
        bool soft = false;
        for (std::size_t i = 0; i < model_.size(); ++i) {
            const auto& c = model_.components[i];
            level_[i] += sample_gamma(c.y_alpha, c.y_beta, rng_);
            if (level_[i] >= thresholds_[i]) soft = true;
        }
        if (soft) {
            kind_ = FailureKind::soft;
            failure_time_ = s;
        }
    }

    const SystemModel& model_;
    const ThresholdVector& thresholds_;
    double sub_step_;
    RandomStream& rng_;
    std::uint64_t bridge_seed_;
    std::vector<double> level_;
    double now_ = 0.0;
    double next_shock_ = kInf;
    std::uint64_t segment_ = 0;
    FailureKind kind_ = FailureKind::none;
    double failure_time_ = kInf;
};

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

const char* to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::soft: return "soft";
        case FailureKind::hard: return "hard";
        case FailureKind::none: break;
    }
    return "none";
}

void SimulationConfig::validate() const {
    if (replications < 1) throw DomainError("simulation.replications must be >= 1");
    if (sub_step && !(*sub_step > 0.0 && std::isfinite(*sub_step))) {
        throw DomainError("simulation.sub_step must be finite and > 0");
    }
    if (horizon_cap < 1) throw DomainError("simulation.horizon_cap must be >= 1");
    if (threads < 0) throw DomainError("simulation.threads must be >= 0");
}

CycleOutcome simulate_cycle(const SystemModel& model, const Policy& policy, RandomStream& rng,
                            const SimulationConfig& sim) {
    policy.validate(model);
    const double sub_step = sim.sub_step.value_or(policy.tau / 1024.0);
    const ThresholdVector h1 = critical_thresholds(model);
    PathWalker path(model, h1, sub_step, rng);

    CycleOutcome out;
    for (long k = 1; k <= sim.horizon_cap; ++k) {
        const double inspection = static_cast<double>(k) * policy.tau;
        path.advance(inspection);
        bool detected = path.failed();
        for (std::size_t i = 0; i < model.size() && !detected; ++i) detected = path.level(i) >= policy.h2[i];
        if (!detected) continue;

        out.inspections = k;
        out.cycle_length = inspection;
        if (path.failed()) {
            out.failure_time = path.failure_time();
            out.failure_kind = path.kind();
            out.downtime = std::max(0.0, inspection - path.failure_time());
        } else {
            out.ended_preventively = true;
        }
        return out;
    }
    throw TruncationError("simulate_cycle: no detection within horizon_cap = " + std::to_string(sim.horizon_cap) +
                          " inspections");
}

SimulationEstimate estimate_cost_rate(const SystemModel& model, const Policy& policy, const CostParams& costs,
                                      const SimulationConfig& sim) {
    model.validate();
    policy.validate(model);
    costs.validate();
    sim.validate();

    const auto n = static_cast<std::size_t>(sim.replications);
    std::vector<CycleOutcome> outcomes(n);
    detail::parallel_for(n, sim.threads, [&](std::size_t j) {
        RandomStream rng = RandomStream::substream(sim.seed, j);
        outcomes[j] = simulate_cycle(model, policy, rng, sim);
    });

    std::vector<double> cost(n), length(n), downtime(n);
    double inspections = 0.0;
    long preventive = 0, hard = 0, soft = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& o = outcomes[j];
        cost[j] = costs.c_i * o.inspections + costs.c_rho * o.downtime + costs.c_r;
        length[j] = o.cycle_length;
        downtime[j] = o.downtime;
        inspections += o.inspections;
        preventive += o.ended_preventively ? 1 : 0;
        hard += o.failure_kind == FailureKind::hard ? 1 : 0;
        soft += o.failure_kind == FailureKind::soft ? 1 : 0;
    }

    SimulationEstimate e;
    const double dn = static_cast<double>(n);
    e.replications = sim.replications;
    e.mean_total_cost = mean_of(cost);
    e.mean_cycle_length = mean_of(length);
    e.mean_downtime = mean_of(downtime);
    e.mean_inspections = inspections / dn;
    e.mean_cr = e.mean_total_cost / e.mean_cycle_length;
    e.preventive_fraction = preventive / dn;
    e.hard_failure_fraction = hard / dn;
    e.soft_failure_fraction = soft / dn;

    if (n < 2) {
        e.stderr_cr = std::numeric_limits<double>::quiet_NaN();
        e.stderr_downtime = std::numeric_limits<double>::quiet_NaN();
        return e;
    }
    // Delta method for a ratio of means: Var(R) ~ Var(TC - R K) / (n E[K]^2).
    double ratio_ss = 0.0;
    double downtime_ss = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double r = cost[j] - e.mean_cr * length[j];
        ratio_ss += r * r;
        const double d = downtime[j] - e.mean_downtime;
        downtime_ss += d * d;
    }
    e.stderr_cr = std::sqrt(ratio_ss / (dn - 1.0) / dn) / e.mean_cycle_length;
    e.stderr_downtime = std::sqrt(downtime_ss / (dn - 1.0) / dn);
    return e;
}

double simulate_first_passage(const SystemModel& model, const ThresholdVector& thresholds, double horizon,
                              double sub_step, RandomStream& rng) {
    if (!(horizon >= 0.0)) throw DomainError("simulate_first_passage: horizon must be >= 0");
    if (!(sub_step > 0.0)) throw DomainError("simulate_first_passage: sub_step must be > 0");
    PathWalker path(model, thresholds, sub_step, rng);
    path.advance(horizon);
    return path.failed() ? path.failure_time() : kInf;
}

std::vector<std::pair<double, double>> empirical_first_passage_cdf(const SystemModel& model,
                                                                   const ThresholdVector& thresholds,
                                                                   const SimulationConfig& sim,
                                                                   const std::vector<double>& t_grid) {
    model.validate();
    validate_thresholds(model, thresholds);
    sim.validate();
    double horizon = 0.0;
    for (double t : t_grid) {
        if (!(t >= horizon)) throw DomainError("empirical_first_passage_cdf: t_grid must be nonnegative and nondecreasing");
        horizon = t;
    }
    const double sub_step = sim.sub_step.value_or(horizon > 0.0 ? horizon * 0x1p-24 : 1.0);

    const auto n = static_cast<std::size_t>(sim.replications);
    std::vector<double> times(n);
    detail::parallel_for(n, sim.threads, [&](std::size_t j) {
        RandomStream rng = RandomStream::substream(sim.seed, j);
        times[j] = simulate_first_passage(model, thresholds, horizon, sub_step, rng);
    });
    std::sort(times.begin(), times.end());

    std::vector<std::pair<double, double>> curve;
    curve.reserve(t_grid.size());
    for (double t : t_grid) {
        const auto count = std::upper_bound(times.begin(), times.end(), t) - times.begin();
        curve.emplace_back(t, static_cast<double>(count) / static_cast<double>(n));
    }
    return curve;
}

}  // namespace cbm
