#include "cbm/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "cbm/errors.hpp"
#include "cbm/random.hpp"
#include "parallel.hpp"

namespace cbm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kLhsBlock = 8;
constexpr double kSimplexStep = 0.1;

using Point = std::vector<double>;

struct Run {
    Point start;
    double start_f = kInf;
    Point best;
    double best_f = kInf;
    int iterations = 0;
    bool converged = false;
    std::vector<std::pair<Point, double>> trace;
};

Point project(Point u) {
    for (double& v : u) v = std::clamp(v, 0.0, 1.0);
    return u;
}

// Maps box-normalized coordinates u in [0,1]^d to a policy.
class PolicyBox {
public:
    PolicyBox(const SystemModel& model, const OptimizerConfig& config, std::optional<double> fixed_tau)
        : model_(model), fixed_tau_(fixed_tau),
          log_lo_(std::log(config.tau_min)), log_hi_(std::log(config.tau_max)) {}

    std::size_t dimension() const { return model_.size() + (fixed_tau_ ? 0 : 1); }

    Policy policy(const Point& u) const {
        Policy p;
        std::size_t offset = 0;
        if (fixed_tau_) {
            p.tau = *fixed_tau_;
        } else {
            p.tau = u[0] == 1.0 ? std::exp(log_hi_) : std::exp(log_lo_ + u[0] * (log_hi_ - log_lo_));
            offset = 1;
        }
        p.h2.values.resize(model_.size());
        for (std::size_t i = 0; i < model_.size(); ++i) {
            p.h2.values[i] = std::min(u[offset + i] * model_.components[i].h1, model_.components[i].h1);
        }
        return p;
    }

    // Start point `index`: Latin-hypercube block index / 8, seeded by (seed, block).
    Point start(std::uint64_t seed, int index) const {
        const int block = index / kLhsBlock;
        const int row = index % kLhsBlock;
        RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(block));
        Point u(dimension());
        for (std::size_t d = 0; d < dimension(); ++d) {
            std::array<int, kLhsBlock> strata{};
            std::iota(strata.begin(), strata.end(), 0);
            // Fisher-Yates with our own draws, so the sequence is library-independent.
            for (int k = kLhsBlock - 1; k > 0; --k) {
                const int j = static_cast<int>(rng.uniform() * (k + 1));
                std::swap(strata[k], strata[std::min(j, k)]);
            }
            std::array<double, kLhsBlock> jitter{};
            for (double& v : jitter) v = rng.uniform();
            const double v = (strata[row] + jitter[row]) / kLhsBlock;
            const bool is_tau = !fixed_tau_ && d == 0;
            u[d] = is_tau ? v : 0.05 + 0.9 * v;
        }
        return u;
    }

private:
    const SystemModel& model_;
    std::optional<double> fixed_tau_;
    double log_lo_;
    double log_hi_;
};

Run nelder_mead(const std::function<double(const Point&)>& f, const Point& start, const OptimizerConfig& config) {
    const std::size_t n = start.size();
    Run run;
    run.start = start;

    std::vector<Point> x(n + 1, start);
    std::vector<double> fx(n + 1);
    auto build_simplex = [&](const Point& center, double center_f) {
        x[0] = center;
        fx[0] = center_f;
        for (std::size_t i = 0; i < n; ++i) {
            x[i + 1] = center;
            x[i + 1][i] += center[i] + kSimplexStep <= 1.0 ? kSimplexStep : -kSimplexStep;
            x[i + 1] = project(x[i + 1]);
            fx[i + 1] = f(x[i + 1]);
        }
    };
    run.start_f = f(start);
    build_simplex(start, run.start_f);

    std::vector<std::size_t> order(n + 1);
    double last_restart_f = kInf;
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        {
            std::vector<Point> xs(n + 1);
            std::vector<double> fs(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                xs[i] = x[order[i]];
                fs[i] = fx[order[i]];
            }
            x.swap(xs);
            fx.swap(fs);
        }
        run.best = x[0];
        run.best_f = fx[0];
        run.trace.emplace_back(x[0], fx[0]);
        if (!std::isfinite(fx[0]) && std::all_of(fx.begin(), fx.end(), [](double v) { return !std::isfinite(v); })) {
            return run;
        }

        double size = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t i = 0; i < n; ++i) size = std::max(size, std::abs(x[j][i] - x[0][i]));
        }
        const bool flat = std::isfinite(fx[n]) && fx[n] - fx[0] <= config.f_tol * std::max(std::abs(fx[0]), std::abs(fx[n]));
        if (size <= config.x_tol || flat) {
            // Restart around the best vertex until a restart stops paying off.
            if (std::isfinite(last_restart_f) && last_restart_f - fx[0] <= config.f_tol * std::abs(fx[0])) {
                run.converged = true;
                return run;
            }
            last_restart_f = fx[0];
            if (run.iterations >= config.max_iterations) return run;
            build_simplex(x[0], fx[0]);
            ++run.iterations;
            continue;
        }
        if (run.iterations >= config.max_iterations) return run;
        ++run.iterations;

        Point centroid(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += x[j][i] / static_cast<double>(n);
        }
        auto along = [&](double t) {
            Point p(n);
            for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (x[n][i] - centroid[i]);
            return project(p);
        };

        const Point xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fx[0]) {
            const Point xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                x[n] = xe;
                fx[n] = fe;
            } else {
                x[n] = xr;
                fx[n] = fr;
            }
            continue;
        }
        if (fr < fx[n - 1]) {
            x[n] = xr;
            fx[n] = fr;
            continue;
        }
        const bool outside = fr < fx[n];
        const Point xc = along(outside ? -0.5 : 0.5);
        const double fc = f(xc);
        if (outside ? fc <= fr : fc < fx[n]) {
            x[n] = xc;
            fx[n] = fc;
            continue;
        }
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t i = 0; i < n; ++i) x[j][i] = x[0][i] + 0.5 * (x[j][i] - x[0][i]);
            fx[j] = f(x[j]);
        }
    }
}

}  // namespace

void OptimizerConfig::validate() const {
    if (multistart_count < 1) throw DomainError("optimizer.multistart_count must be >= 1");
    if (max_iterations < 1) throw DomainError("optimizer.max_iterations must be >= 1");
    if (!(x_tol > 0.0)) throw DomainError("optimizer.x_tol must be > 0");
    if (!(f_tol > 0.0)) throw DomainError("optimizer.f_tol must be > 0");
    if (!(tau_min > 0.0) || !std::isfinite(tau_max) || !(tau_min < tau_max)) {
        throw DomainError("optimizer.tau_bounds must satisfy 0 < tau_min < tau_max < inf");
    }
    if (threads < 0) throw DomainError("optimizer.threads must be >= 0");
}

OptimizationResult minimize_policy_objective(const SystemModel& model, const PolicyObjective& objective,
                                             const OptimizerConfig& config, std::optional<double> fixed_tau) {
    model.validate();
    config.validate();
    if (fixed_tau && !(*fixed_tau > 0.0 && std::isfinite(*fixed_tau))) {
        throw DomainError("fixed tau must be finite and > 0");
    }
    const PolicyBox box(model, config, fixed_tau);
    auto f = [&](const Point& u) {
        try {
            const double v = objective(box.policy(u));
            return std::isfinite(v) ? v : kInf;
        } catch (const std::exception&) {
            return kInf;
        }
    };

    std::vector<Run> runs(static_cast<std::size_t>(config.multistart_count));
    detail::parallel_for(runs.size(), config.threads, [&](std::size_t s) {
        runs[s] = nelder_mead(f, box.start(config.seed, static_cast<int>(s)), config);
    });

    OptimizationResult result;
    std::size_t best = runs.size();
    for (std::size_t s = 0; s < runs.size(); ++s) {
        const Run& r = runs[s];
        StartSummary summary;
        summary.start = box.policy(r.start);
        summary.start_cr = r.start_f;
        summary.best = box.policy(r.best);
        summary.best_cr = r.best_f;
        summary.iterations = r.iterations;
        summary.converged = r.converged;
        result.starts.push_back(summary);
        result.iterations_used += r.iterations;
        result.starts_converged += r.converged ? 1 : 0;
        if (std::isfinite(r.best_f) && (best == runs.size() || r.best_f < runs[best].best_f)) best = s;
    }
    if (best == runs.size()) {
        throw OptimizationError("all " + std::to_string(runs.size()) +
                                " optimizer starts failed to produce a finite objective");
    }
    result.best_policy = box.policy(runs[best].best);
    result.best_breakdown.cr = runs[best].best_f;
    int iteration = 0;
    for (const auto& [u, value] : runs[best].trace) result.trace.push_back({iteration++, box.policy(u), value});
    return result;
}

namespace {

OptimizationResult optimize_cost(const SystemModel& model, const CostParams& costs, const OptimizerConfig& config,
                                 const TruncationConfig& trunc, const SeriesTailConfig& tail,
                                 std::optional<double> fixed_tau) {
    costs.validate();
    trunc.validate();
    tail.validate();
    auto objective = [&](const Policy& p) { return cost_rate(model, p, costs, trunc, tail).cr; };
    OptimizationResult result = minimize_policy_objective(model, objective, config, fixed_tau);
    result.best_breakdown = cost_rate(model, result.best_policy, costs, trunc, tail);
    return result;
}

}  // namespace

OptimizationResult optimize_policy(const SystemModel& model, const CostParams& costs, const OptimizerConfig& config,
                                   const TruncationConfig& trunc, const SeriesTailConfig& tail) {
    return optimize_cost(model, costs, config, trunc, tail, std::nullopt);
}

OptimizationResult optimize_fixed_tau(const SystemModel& model, const CostParams& costs, double tau,
                                      const OptimizerConfig& config, const TruncationConfig& trunc,
                                      const SeriesTailConfig& tail) {
    if (!(tau > 0.0)) throw DomainError("optimize_fixed_tau: tau must be > 0");
    return optimize_cost(model, costs, config, trunc, tail, tau);
}

}  // namespace cbm
