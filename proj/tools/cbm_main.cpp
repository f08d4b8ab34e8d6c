#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cbm/commands.hpp"
#include "cbm/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kComputation = 3, kIo = 4 };

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--config", o.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_path, "report path; CSV tables are written next to it (default: stdout)");
    sub->add_option("--seed", o.seed, "seed for optimizer start points and simulation streams");
    sub->add_option("--threads", o.threads, "worker threads (default: machine parallelism)")
        ->check(CLI::NonNegativeNumber);
}

cbm::RunConfig load(const CommonOptions& o) {
    cbm::RunConfig c = cbm::parse_config(o.config_path);
    if (o.seed) {
        c.optimizer.seed = *o.seed;
        if (c.simulation) c.simulation->seed = *o.seed;
    }
    if (o.threads) {
        c.optimizer.threads = *o.threads;
        if (c.simulation) c.simulation->threads = *o.threads;
    }
    return c;
}

void emit(const cbm::Report& report, const CommonOptions& o) {
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    if (o.out_path.empty()) {
        std::cout << report.to_json().dump(2) << '\n';
    } else {
        cbm::write_report(report, o.out_path);
    }
}

int fail(const char* kind, const std::exception& e, int code) {
    std::cerr << "error [" << kind << "]: " << e.what() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Condition-based maintenance of degrading series systems under random shocks"};
    app.set_version_flag("--version", std::string(CBM_VERSION));
    app.require_subcommand(1);

    CommonOptions common;
    std::optional<double> t_max;
    std::optional<int> steps;
    std::optional<double> fixed_tau;
    std::optional<int> multistart;
    std::optional<long> reps;

    auto* reliability = app.add_subcommand("reliability", "system reliability and failure-time CDFs on a grid");
    add_common(reliability, common);
    reliability->add_option("--t-max", t_max, "grid end, hours")->check(CLI::PositiveNumber);
    reliability->add_option("--steps", steps, "grid points, >= 2");

    auto* evaluate = app.add_subcommand("evaluate", "cost rate of the configured policy");
    add_common(evaluate, common);

    auto* optimize = app.add_subcommand("optimize", "minimize the cost rate over the inspection interval and h2");
    add_common(optimize, common);
    optimize->add_option("--fixed-tau", fixed_tau, "hold the inspection interval fixed, hours")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--multistart", multistart, "number of optimizer starts")->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the configured policy");
    add_common(simulate, common);
    simulate->add_option("--reps", reps, "replications")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        cbm::RunConfig config = load(common);
        if (multistart) config.optimizer.multistart_count = *multistart;
        if (reps) {
            if (!config.simulation) config.simulation = cbm::SimulationConfig{};
            config.simulation->replications = *reps;
            if (common.seed) config.simulation->seed = *common.seed;
            if (common.threads) config.simulation->threads = *common.threads;
        }
        config.validate();

        cbm::Report report;
        if (*reliability) {
            report = cbm::cmd_reliability(config, t_max, steps);
        } else if (*evaluate) {
            report = cbm::cmd_evaluate(config);
        } else if (*optimize) {
            report = cbm::cmd_optimize(config, fixed_tau);
        } else {
            report = cbm::cmd_simulate(config);
        }
        emit(report, common);
    } catch (const cbm::ConfigError& e) {
        return fail("config", e, kConfig);
    } catch (const cbm::DomainError& e) {
        return fail("config", e, kConfig);
    } catch (const cbm::IoError& e) {
        return fail("io", e, kIo);
    } catch (const cbm::TruncationError& e) {
        return fail("truncation", e, kComputation);
    } catch (const cbm::ConvergenceError& e) {
        return fail("convergence", e, kComputation);
    } catch (const cbm::OptimizationError& e) {
        return fail("optimization", e, kComputation);
    } catch (const std::exception& e) {
        return fail("internal", e, kComputation);
    }
    return kOk;
}
