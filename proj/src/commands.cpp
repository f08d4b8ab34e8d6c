#include "cbm/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cbm/errors.hpp"

namespace cbm {

using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json policy_json(const Policy& p) { return {{"tau", p.tau}, {"h2", p.h2.values}}; }

json breakdown_json(const CostBreakdown& b) {
    return {{"e_ni", num(b.e_ni)},  {"e_rho", num(b.e_rho)}, {"e_k", num(b.e_k)},
            {"e_tc", num(b.e_tc)},  {"cr", num(b.cr)},       {"inspections_summed", b.inspections_summed},
            {"downtime_mode", "paper"}};
}

json estimate_json(const SimulationEstimate& e) {
    return {{"replications", e.replications},
            {"mean_cr", num(e.mean_cr)},
            {"stderr_cr", num(e.stderr_cr)},
            {"mean_inspections", num(e.mean_inspections)},
            {"mean_downtime", num(e.mean_downtime)},
            {"stderr_downtime", num(e.stderr_downtime)},
            {"mean_cycle_length", num(e.mean_cycle_length)},
            {"mean_total_cost", num(e.mean_total_cost)},
            {"preventive_fraction", num(e.preventive_fraction)},
            {"corrective_fraction", num(1.0 - e.preventive_fraction)},
            {"hard_failure_fraction", num(e.hard_failure_fraction)},
            {"soft_failure_fraction", num(e.soft_failure_fraction)}};
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Starts the clock and fills the common fields; finish() stamps the duration.
class ReportBuilder {
public:
    ReportBuilder(std::string command, const RunConfig& config) : start_(std::chrono::steady_clock::now()) {
        report_.command = std::move(command);
        report_.config = config_to_json(config);
        report_.timestamp = utc_now();
    }
    Report& operator*() { return report_; }
    Report* operator->() { return &report_; }
    Report finish() {
        report_.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    Report report_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<double> uniform_grid(double t_max, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) grid[k] = t_max * k / (steps - 1);
    return grid;
}

const Policy& require_policy(const RunConfig& config, const char* command) {
    if (!config.policy) throw ConfigError(std::string(command) + " needs a 'policy' section in the config");
    return *config.policy;
}

}  // namespace

json Report::to_json() const {
    json j;
    j["tool"] = "cbm";
    j["version"] = CBM_VERSION;
    j["command"] = command;
    j["timestamp"] = timestamp;
    j["duration_seconds"] = num(duration_seconds);
    j["config"] = config;
    j["result"] = result;
    j["warnings"] = warnings;
    return j;
}

Report cmd_reliability(const RunConfig& config, std::optional<double> t_max, std::optional<int> steps) {
    ReportBuilder r("reliability", config);
    if (!t_max && config.reliability) t_max = config.reliability->t_max;
    if (!steps && config.reliability) steps = config.reliability->steps;
    if (!t_max || !(*t_max > 0.0)) throw ConfigError("reliability needs t_max > 0 (--t-max or reliability.t_max)");
    if (!steps || *steps < 2) throw ConfigError("reliability needs steps >= 2 (--steps or reliability.steps)");

    const auto grid = uniform_grid(*t_max, *steps);
    const ThresholdVector h1 = critical_thresholds(config.system);
    const auto survival = reliability_curve(config.system, grid, h1, config.truncation);

    CsvTable table{"curve", {"t", "R", "F_H1"}, {}};
    if (config.policy) table.header.push_back("F_H2");
    json rows = json::array();
    bool monotone = true;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        const double f1 = failure_time_cdf(config.system, t, config.truncation);
        std::vector<double> row{t, survival[k].second, f1};
        json jrow = {{"t", t}, {"R", survival[k].second}, {"F_H1", f1}};
        if (config.policy) {
            const double f2 = detection_time_cdf(config.system, t, config.policy->h2, config.truncation);
            row.push_back(f2);
            jrow["F_H2"] = f2;
        }
        if (k > 0 && survival[k].second > survival[k - 1].second) monotone = false;
        table.rows.push_back(std::move(row));
        rows.push_back(std::move(jrow));
    }
    if (!monotone) r->warnings.push_back("R(t) increases somewhere on the grid; quadrature noise exceeds the step");
    r->result = {{"t_max", *t_max}, {"steps", *steps}, {"curve", rows}};
    r->tables.push_back(std::move(table));
    return r.finish();
}

Report cmd_evaluate(const RunConfig& config) {
    ReportBuilder r("evaluate", config);
    const Policy& policy = require_policy(config, "evaluate");
    const CostBreakdown b = cost_rate(config.system, policy, config.costs, config.truncation, config.tail);
    r->result = {{"policy", policy_json(policy)}, {"breakdown", breakdown_json(b)}};

    if (config.simulation) {
        const SimulationEstimate e = estimate_cost_rate(config.system, policy, config.costs, *config.simulation);
        const double cr_gap = b.cr - e.mean_cr;
        const double rho_gap = b.e_rho - e.mean_downtime;
        const bool cr_flag = !(std::abs(cr_gap) <= 3.0 * e.stderr_cr);
        const bool rho_flag = !(std::abs(rho_gap) <= 3.0 * e.stderr_downtime);
        r->result["simulation"] = estimate_json(e);
        r->result["cr_gap"] = {{"analytic_minus_mc", num(cr_gap)},
                               {"stderr", num(e.stderr_cr)},
                               {"z", num(cr_gap / e.stderr_cr)},
                               {"exceeds_3_stderr", cr_flag}};
        r->result["downtime_gap"] = {{"paper_mode", num(b.e_rho)},
                                     {"pathwise_mc", num(e.mean_downtime)},
                                     {"paper_minus_mc", num(rho_gap)},
                                     {"stderr", num(e.stderr_downtime)},
                                     {"exceeds_3_stderr", rho_flag}};
        if (cr_flag) {
            r->warnings.push_back("analytic CR differs from the Monte Carlo estimate by more than 3 stderr");
        }
        if (rho_flag) {
            r->warnings.push_back("paper-mode downtime differs from the pathwise Monte Carlo mean by more than 3 stderr");
        }
        if (!std::isfinite(e.stderr_cr)) r->warnings.push_back("stderr undefined: fewer than 2 replications");
    }
    return r.finish();
}

Report cmd_optimize(const RunConfig& config, std::optional<double> fixed_tau) {
    ReportBuilder r("optimize", config);
    const OptimizationResult o =
        fixed_tau ? optimize_fixed_tau(config.system, config.costs, *fixed_tau, config.optimizer, config.truncation,
                                       config.tail)
                  : optimize_policy(config.system, config.costs, config.optimizer, config.truncation, config.tail);

    json starts = json::array();
    for (const auto& s : o.starts) {
        starts.push_back({{"start", policy_json(s.start)},
                          {"start_cr", num(s.start_cr)},
                          {"best", policy_json(s.best)},
                          {"best_cr", num(s.best_cr)},
                          {"iterations", s.iterations},
                          {"converged", s.converged}});
    }
    CsvTable trace{"trace", {"iteration", "cr", "tau"}, {}};
    for (std::size_t i = 0; i < config.system.size(); ++i) trace.header.push_back("h2_" + std::to_string(i + 1));
    json trace_json = json::array();
    for (const auto& p : o.trace) {
        std::vector<double> row{static_cast<double>(p.iteration), p.cr, p.policy.tau};
        row.insert(row.end(), p.policy.h2.values.begin(), p.policy.h2.values.end());
        trace.rows.push_back(std::move(row));
        trace_json.push_back({{"iteration", p.iteration}, {"cr", num(p.cr)}, {"policy", policy_json(p.policy)}});
    }
    r->result = {{"mode", fixed_tau ? "fixed_tau" : "joint"},
                 {"best_policy", policy_json(o.best_policy)},
                 {"best_breakdown", breakdown_json(o.best_breakdown)},
                 {"iterations_used", o.iterations_used},
                 {"starts_converged", o.starts_converged},
                 {"starts", starts},
                 {"trace", trace_json}};
    if (o.starts_converged < static_cast<int>(o.starts.size())) {
        r->warnings.push_back(std::to_string(o.starts.size() - o.starts_converged) +
                              " optimizer start(s) stopped at max_iterations before converging");
    }
    r->tables.push_back(std::move(trace));
    return r.finish();
}

Report cmd_simulate(const RunConfig& config) {
    ReportBuilder r("simulate", config);
    const Policy& policy = require_policy(config, "simulate");
    if (!config.simulation) throw ConfigError("simulate needs a 'simulation' section in the config");
    const SimulationEstimate e = estimate_cost_rate(config.system, policy, config.costs, *config.simulation);
    r->result = {{"policy", policy_json(policy)}, {"estimate", estimate_json(e)}};
    if (!std::isfinite(e.stderr_cr)) r->warnings.push_back("stderr undefined: fewer than 2 replications");

    if (config.first_passage) {
        const auto grid = uniform_grid(config.first_passage->t_max, config.first_passage->steps);
        const auto curve = empirical_first_passage_cdf(config.system, critical_thresholds(config.system),
                                                       *config.simulation, grid);
        CsvTable table{"first_passage", {"t", "F_hat"}, {}};
        json rows = json::array();
        for (const auto& [t, f] : curve) {
            table.rows.push_back({t, f});
            rows.push_back({{"t", t}, {"F_hat", f}});
        }
        r->result["first_passage"] = rows;
        r->tables.push_back(std::move(table));
    }
    return r.finish();
}

std::string format_csv(const CsvTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    char buf[32];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string table_path(const std::string& out_path, const std::string& suffix) {
    std::filesystem::path p(out_path);
    p.replace_extension();
    return p.string() + "." + suffix + ".csv";
}

void write_report(const Report& report, const std::string& out_path) {
    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream out(path);
        if (!out) throw IoError("cannot write '" + path + "'");
        out << text;
        if (!out) throw IoError("write to '" + path + "' failed");
    };
    write(out_path, report.to_json().dump(2) + "\n");
    for (const auto& t : report.tables) write(table_path(out_path, t.suffix), format_csv(t));
}

}  // namespace cbm
