#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etmrs/analysis.hpp"
#include "etmrs/simulator.hpp"

namespace etmrs {

enum class PolicyMode { fixed, optimize_iid, optimize_full, optimize_heuristic };

/// Parsed scenario file: raw values plus expanded sweep grids. Domain types
/// are constructed later, in build_scenario, so validation can list every
/// violation instead of stopping at the first.
struct ScenarioConfig {
    std::vector<double> power_grid;  // watts, one entry per sweep point

    double noise_power = 0.0;
    double kappa = 0.0;
    double eta = 0.0;

    std::vector<std::pair<double, int>> battery_grid;  // (C, L) per sweep point
    double alpha_raw = 0.0;

    struct TopologyRaw {
        double d_sd;
        std::vector<double> d_sr;
        double omega;
        double m;
    };
    std::optional<TopologyRaw> topology;

    struct RelayGains {
        double lambda_sr;
        double lambda_rd;
        double m;
    };
    std::vector<RelayGains> explicit_relays;

    PolicyMode policy_mode = PolicyMode::fixed;
    std::vector<double> chi_raw;  // fixed mode; single entry broadcasts

    bool has_sim = false;
    SimConfig sim;

    /// Per-relay average gains, from the topology's path loss or as given.
    std::vector<RelayGains> relay_gains() const;
    std::size_t relay_count() const;
};

/// Parses a scenario document. Structural problems (invalid JSON, missing or
/// mistyped fields, malformed sweeps) throw ConfigError with the offending
/// field or byte position.
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin);
ScenarioConfig parse_scenario_file(const std::string& path);

/// Checks every domain invariant without running anything; returns one
/// message per violation (empty means the file is good to run).
std::vector<std::string> validate_scenario(const ScenarioConfig& cfg);

/// Instantiates the network at one sweep point. Fixed thresholds are snapped
/// up to the battery lattice; optimize modes get placeholder policies at the
/// lowest threshold for the optimizer to replace.
NetworkScenario build_scenario(const ScenarioConfig& cfg, double source_power, double capacity,
                               int levels);

}  // namespace etmrs
