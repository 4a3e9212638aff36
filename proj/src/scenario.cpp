#include "etmrs/scenario.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "etmrs/errors.hpp"

namespace etmrs {
namespace {

using nlohmann::json;

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

double require_number(const json& node, const std::string& field) {
    if (!node.is_number()) fail(field, "expected a number");
    return node.get<double>();
}

// A scalar or a {from, to, points, spacing} object, expanded to a grid.
std::vector<double> parse_grid(const json& node, const std::string& field) {
    if (node.is_number()) return {node.get<double>()};
    if (!node.is_object()) fail(field, "expected a number or a sweep object");
    if (!node.contains("from") || !node.contains("to") || !node.contains("points"))
        fail(field, "sweep object needs 'from', 'to' and 'points'");
    const double from = require_number(node.at("from"), field + ".from");
    const double to = require_number(node.at("to"), field + ".to");
    if (!node.at("points").is_number_integer()) fail(field + ".points", "expected an integer");
    const int points = node.at("points").get<int>();
    if (points < 1) fail(field + ".points", "must be >= 1");
    std::string spacing = "arithmetic";
    if (node.contains("spacing")) {
        if (!node.at("spacing").is_string()) fail(field + ".spacing", "expected a string");
        spacing = node.at("spacing").get<std::string>();
        if (spacing != "arithmetic" && spacing != "geometric")
            fail(field + ".spacing", "must be 'arithmetic' or 'geometric'");
    }
    if (spacing == "geometric" && !(from > 0.0 && to > 0.0))
        fail(field, "geometric sweep endpoints must be positive");

    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(from);
        return grid;
    }
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        grid.push_back(spacing == "arithmetic" ? from + t * (to - from)
                                               : from * std::pow(to / from, t));
    }
    return grid;
}

const json& require(const json& obj, const std::string& field) {
    if (!obj.contains(field)) fail(field, "missing");
    return obj.at(field);
}

}  // namespace

std::vector<ScenarioConfig::RelayGains> ScenarioConfig::relay_gains() const {
    if (!topology) return explicit_relays;
    std::vector<RelayGains> gains;
    gains.reserve(topology->d_sr.size());
    for (double d : topology->d_sr) {
        gains.push_back(RelayGains{path_loss_gain(d, topology->omega),
                                   path_loss_gain(topology->d_sd - d, topology->omega),
                                   topology->m});
    }
    return gains;
}

std::size_t ScenarioConfig::relay_count() const {
    return topology ? topology->d_sr.size() : explicit_relays.size();
}

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");

    ScenarioConfig cfg;

    const json& radio = require(doc, "radio");
    if (radio.contains("P") == radio.contains("P_dbm"))
        fail("radio", "exactly one of 'P' (watts) or 'P_dbm' must be given");
    if (radio.contains("P")) {
        cfg.power_grid = parse_grid(radio.at("P"), "radio.P");
    } else {
        cfg.power_grid = parse_grid(radio.at("P_dbm"), "radio.P_dbm");
        for (double& p : cfg.power_grid) p = dbm_to_watts(p);
    }
    if (radio.contains("N0") == radio.contains("N0_dbm"))
        fail("radio", "exactly one of 'N0' (watts) or 'N0_dbm' must be given");
    cfg.noise_power = radio.contains("N0")
                          ? require_number(radio.at("N0"), "radio.N0")
                          : dbm_to_watts(require_number(radio.at("N0_dbm"), "radio.N0_dbm"));
    cfg.kappa = require_number(require(radio, "kappa"), "radio.kappa");
    cfg.eta = require_number(require(radio, "eta"), "radio.eta");

    const json& battery = require(doc, "battery");
    const std::vector<double> capacity_grid = parse_grid(require(battery, "C"), "battery.C");
    const json& levels_node = require(battery, "L");
    std::vector<int> level_list;
    if (levels_node.is_number_integer()) {
        level_list.push_back(levels_node.get<int>());
    } else if (levels_node.is_array()) {
        for (const json& l : levels_node) {
            if (!l.is_number_integer()) fail("battery.L", "expected integers");
            level_list.push_back(l.get<int>());
        }
        if (level_list.empty()) fail("battery.L", "list must not be empty");
    } else {
        fail("battery.L", "expected an integer or a list of integers");
    }
    if (capacity_grid.size() > 1 && level_list.size() > 1)
        fail("battery", "a C sweep and an L list cannot be combined");
    if (capacity_grid.size() > 1) {
        // L scales with C so the level width epsilon_1 stays fixed.
        const double base_c = capacity_grid.front();
        const int base_l = level_list.front();
        for (double c : capacity_grid) {
            const double exact = base_l * c / base_c;
            const int levels = static_cast<int>(std::llround(exact));
            if (std::abs(exact - levels) > 1e-6)
                fail("battery.C", "sweep point " + std::to_string(c) +
                                      " does not scale L to an integer level count");
            cfg.battery_grid.emplace_back(c, levels);
        }
    } else {
        for (int l : level_list) cfg.battery_grid.emplace_back(capacity_grid.front(), l);
    }
    cfg.alpha_raw = require_number(require(battery, "alpha"), "battery.alpha");

    if (doc.contains("topology") == doc.contains("relays"))
        throw ConfigError(origin + ": exactly one of 'topology' or 'relays' must be given");
    if (doc.contains("topology")) {
        const json& topo = doc.at("topology");
        ScenarioConfig::TopologyRaw raw;
        raw.d_sd = require_number(require(topo, "d_sd"), "topology.d_sd");
        const json& d_sr = require(topo, "d_sr");
        if (!d_sr.is_array()) fail("topology.d_sr", "expected a list of distances");
        for (const json& d : d_sr) raw.d_sr.push_back(require_number(d, "topology.d_sr[]"));
        raw.omega = require_number(require(topo, "omega"), "topology.omega");
        raw.m = topo.contains("m") ? require_number(topo.at("m"), "topology.m") : 2.0;
        cfg.topology = std::move(raw);
    } else {
        const json& relays = doc.at("relays");
        if (!relays.is_array()) fail("relays", "expected a list");
        for (const json& r : relays) {
            ScenarioConfig::RelayGains g;
            g.lambda_sr = require_number(require(r, "lambda_sr"), "relays[].lambda_sr");
            g.lambda_rd = require_number(require(r, "lambda_rd"), "relays[].lambda_rd");
            g.m = r.contains("m") ? require_number(r.at("m"), "relays[].m") : 2.0;
            cfg.explicit_relays.push_back(g);
        }
    }

    const json& policy = require(doc, "policy");
    if (policy.is_string()) {
        const std::string mode = policy.get<std::string>();
        if (mode == "optimize:iid")
            cfg.policy_mode = PolicyMode::optimize_iid;
        else if (mode == "optimize:full")
            cfg.policy_mode = PolicyMode::optimize_full;
        else if (mode == "optimize:heuristic")
            cfg.policy_mode = PolicyMode::optimize_heuristic;
        else
            fail("policy", "unknown mode '" + mode + "'");
    } else if (policy.is_object() && policy.contains("chi")) {
        cfg.policy_mode = PolicyMode::fixed;
        const json& chi = policy.at("chi");
        if (chi.is_number()) {
            cfg.chi_raw.push_back(chi.get<double>());
        } else if (chi.is_array()) {
            for (const json& c : chi) cfg.chi_raw.push_back(require_number(c, "policy.chi[]"));
        } else {
            fail("policy.chi", "expected a number or a list");
        }
    } else {
        fail("policy", "expected an optimize mode string or an object with 'chi'");
    }

    if (doc.contains("sim")) {
        cfg.has_sim = true;
        const json& sim = doc.at("sim");
        if (sim.contains("blocks")) cfg.sim.blocks = sim.at("blocks").get<std::uint64_t>();
        if (sim.contains("seed")) cfg.sim.seed = sim.at("seed").get<std::uint64_t>();
        if (sim.contains("warmup")) cfg.sim.warmup = sim.at("warmup").get<std::uint64_t>();
        if (sim.contains("stream_length"))
            cfg.sim.stream_length = sim.at("stream_length").get<std::uint64_t>();
        if (sim.contains("battery_mode")) {
            const std::string mode = sim.at("battery_mode").get<std::string>();
            if (mode == "discrete")
                cfg.sim.battery_mode = BatteryMode::discrete;
            else if (mode == "continuous")
                cfg.sim.battery_mode = BatteryMode::continuous;
            else
                fail("sim.battery_mode", "must be 'discrete' or 'continuous'");
        }
    }
    return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
    std::vector<std::string> out;
    const auto report = [&out](const std::string& msg) { out.push_back(msg); };

    const std::size_t n = cfg.relay_count();
    if (n == 0) report("no relays: the relay list / topology must name at least one relay");
    if (n > static_cast<std::size_t>(kMaxRelays))
        report("too many relays: " + std::to_string(n) + " exceeds the enumeration bound " +
               std::to_string(kMaxRelays));

    for (double p : cfg.power_grid)
        if (!(p > 0.0)) report("radio.P: source power must be positive");
    if (!(cfg.noise_power > 0.0)) report("radio.N0: noise power must be positive");
    if (!(cfg.kappa > 0.0)) report("radio.kappa: rate must be positive");
    if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) report("radio.eta: must be in (0,1)");

    if (cfg.topology) {
        const ScenarioConfig::TopologyRaw& t = *cfg.topology;
        if (!(t.d_sd > 0.0)) report("topology.d_sd: must be positive");
        if (!(t.omega >= 2.0 && t.omega <= 5.0)) report("topology.omega: must be in [2,5]");
        for (std::size_t u = 0; u < t.d_sr.size(); ++u) {
            if (!(t.d_sr[u] > 0.0 && t.d_sr[u] < t.d_sd))
                report("topology.d_sr[" + std::to_string(u) +
                       "]: relay must lie strictly between source and destination");
        }
        if (!(t.m >= 0.5)) report("topology.m: Nakagami shape must be >= 0.5");
    } else {
        for (std::size_t u = 0; u < cfg.explicit_relays.size(); ++u) {
            const ScenarioConfig::RelayGains& g = cfg.explicit_relays[u];
            if (!(g.lambda_sr > 0.0))
                report("relays[" + std::to_string(u) + "].lambda_sr: must be positive");
            if (!(g.lambda_rd > 0.0))
                report("relays[" + std::to_string(u) + "].lambda_rd: must be positive");
            if (!(g.m >= 0.5))
                report("relays[" + std::to_string(u) + "].m: Nakagami shape must be >= 0.5");
        }
    }

    if (cfg.alpha_raw < 0.0) report("battery.alpha: must be nonnegative");
    for (const auto& [capacity, levels] : cfg.battery_grid) {
        const std::string point = "(C=" + std::to_string(capacity) + ", L=" + std::to_string(levels) + ")";
        if (!(capacity > 0.0)) {
            report("battery.C: capacity must be positive");
            continue;
        }
        if (levels < 1) {
            report("battery.L: level count must be >= 1");
            continue;
        }
        const double eps1 = capacity / levels;
        if (cfg.alpha_raw > capacity) {
            report("battery.alpha: AlphaExceedsCapacity at " + point +
                   ": circuit cost exceeds the full battery");
            continue;
        }
        const int alpha_index = static_cast<int>(std::ceil(cfg.alpha_raw / eps1 - 1e-9));
        if (alpha_index >= levels) {
            report("battery.alpha: AlphaExceedsCapacity at " + point +
                   ": discretized alpha reaches the top level");
            continue;
        }
        if (cfg.policy_mode == PolicyMode::fixed) {
            for (std::size_t u = 0; u < cfg.chi_raw.size(); ++u) {
                const double chi = cfg.chi_raw[u];
                const std::string who = "policy.chi[" + std::to_string(u) + "]";
                if (!(chi > 0.0)) {
                    report(who + ": must be positive");
                    continue;
                }
                if (chi > capacity * (1.0 + 1e-9)) {
                    report(who + ": threshold exceeds battery capacity at " + point);
                    continue;
                }
                const double scaled = chi / eps1;
                const double nearest = std::round(scaled);
                if (std::abs(scaled - nearest) > 1e-6 * std::max(1.0, scaled)) {
                    report(who + ": off-lattice threshold " + std::to_string(chi) + " J at " +
                           point + "; nearest valid values are " +
                           std::to_string(std::floor(scaled) * eps1) + " J and " +
                           std::to_string(std::ceil(scaled) * eps1) + " J");
                } else if (static_cast<int>(nearest) <= alpha_index) {
                    report(who + ": threshold leaves no forwarding energy above alpha at " + point);
                }
            }
        }
    }
    if (cfg.policy_mode == PolicyMode::fixed) {
        if (cfg.chi_raw.empty())
            report("policy.chi: fixed policy needs at least one threshold");
        else if (cfg.chi_raw.size() != 1 && cfg.chi_raw.size() != n)
            report("policy.chi: expected 1 or " + std::to_string(n) + " thresholds, got " +
                   std::to_string(cfg.chi_raw.size()));
    }
    if (cfg.policy_mode == PolicyMode::optimize_iid) {
        const std::vector<ScenarioConfig::RelayGains> gains = cfg.relay_gains();
        for (std::size_t u = 1; u < gains.size(); ++u) {
            if (gains[u].lambda_sr != gains[0].lambda_sr ||
                gains[u].lambda_rd != gains[0].lambda_rd || gains[u].m != gains[0].m) {
                report("policy: optimize:iid requires identical per-relay channel statistics");
                break;
            }
        }
    }
    if (cfg.has_sim) {
        if (cfg.sim.blocks == 0) report("sim.blocks: must be >= 1");
        if (cfg.sim.warmup >= cfg.sim.blocks && cfg.sim.blocks > 0)
            report("sim.warmup: must be smaller than sim.blocks");
        if (cfg.sim.stream_length == 0) report("sim.stream_length: must be >= 1");
    }
    return out;
}

NetworkScenario build_scenario(const ScenarioConfig& cfg, double source_power, double capacity,
                               int levels) {
    const std::vector<ScenarioConfig::RelayGains> gains = cfg.relay_gains();
    RadioParams radio(source_power, cfg.noise_power, cfg.kappa, cfg.eta);
    BatterySpec spec(capacity, levels, cfg.alpha_raw);

    std::vector<RelayConfig> relays;
    relays.reserve(gains.size());
    for (std::size_t u = 0; u < gains.size(); ++u) {
        RelayEnergyPolicy policy{1, spec.alpha_index() + 1};
        if (cfg.policy_mode == PolicyMode::fixed) {
            const double chi = cfg.chi_raw.size() == 1 ? cfg.chi_raw[0] : cfg.chi_raw.at(u);
            policy = RelayEnergyPolicy::from_threshold(spec, chi);
        }
        relays.push_back(RelayConfig{NakagamiLink(gains[u].m, gains[u].lambda_sr),
                                     RayleighLink(gains[u].lambda_rd), policy});
    }
    return NetworkScenario{std::move(relays), radio, spec};
}

}  // namespace etmrs
