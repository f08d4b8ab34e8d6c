#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "cbm/optimizer.hpp"
#include "cbm/simulator.hpp"

namespace cbm {

struct ReliabilityRequest {
    double t_max = 0.0;
    int steps = 0;
};

struct FirstPassageRequest {
    double t_max = 0.0;
    int steps = 0;
};

/// Everything a CLI run needs, with every default resolved.
struct RunConfig {
    SystemModel system;
    CostParams costs;
    std::optional<Policy> policy;
    OptimizerConfig optimizer;
    std::optional<SimulationConfig> simulation;
    std::optional<FirstPassageRequest> first_passage;  ///< simulation.first_passage
    std::optional<ReliabilityRequest> reliability;
    TruncationConfig truncation;
    SeriesTailConfig tail;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Reads and validates a JSON config. Unknown keys are rejected. Throws
/// ConfigError with line/column for syntax errors, IoError when unreadable.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");

/// The resolved config in the input schema, defaults filled in.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace cbm
