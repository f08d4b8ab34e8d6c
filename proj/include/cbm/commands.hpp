#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbm/config.hpp"

namespace cbm {

/// Columnar output written next to the JSON report as <stem>.<suffix>.csv.
struct CsvTable {
    std::string suffix;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct Report {
    std::string command;
    nlohmann::json config;
    nlohmann::json result;
    std::vector<std::string> warnings;
    std::vector<CsvTable> tables;
    double duration_seconds = 0.0;
    std::string timestamp;  ///< UTC, ISO 8601

    /// Non-finite numbers are written as null.
    nlohmann::json to_json() const;
};

/// System R(t), F under h1, and F under h2 when a policy is present, on
/// steps points spanning [0, t_max]. Arguments override config.reliability.
Report cmd_reliability(const RunConfig& config, std::optional<double> t_max = std::nullopt,
                       std::optional<int> steps = std::nullopt);

/// Cost breakdown of config.policy; with a simulation section also the Monte
/// Carlo estimate and the analytic-minus-simulated gaps in CR and downtime.
Report cmd_evaluate(const RunConfig& config);

/// Joint (tau, h2) optimization, or h2 only when fixed_tau is given.
Report cmd_optimize(const RunConfig& config, std::optional<double> fixed_tau = std::nullopt);

/// Monte Carlo estimate of config.policy, plus the empirical first-passage
/// CDF when simulation.first_passage is set.
Report cmd_simulate(const RunConfig& config);

std::string format_csv(const CsvTable& table);

/// "<dir>/<stem>.<suffix>.csv" for an output path "<dir>/<stem>.json".
std::string table_path(const std::string& out_path, const std::string& suffix);

/// Writes the JSON report and its CSV tables. Throws IoError.
void write_report(const Report& report, const std::string& out_path);

}  // namespace cbm
