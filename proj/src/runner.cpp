#include "etmrs/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "etmrs/bounds.hpp"
#include "etmrs/errors.hpp"
#include "etmrs/optimizer.hpp"
#include "etmrs/scenario.hpp"

namespace etmrs {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_thresholds(const NetworkScenario& scenario) {
    std::string out;
    for (std::size_t u = 0; u < scenario.relays.size(); ++u) {
        if (u) out += ';';
        out += fmt(scenario.relays[u].policy.chi(scenario.spec));
    }
    return out;
}

void apply_policies(NetworkScenario& scenario, const std::vector<RelayEnergyPolicy>& policies) {
    for (std::size_t u = 0; u < scenario.relays.size(); ++u)
        scenario.relays[u].policy = policies[u];
}

}  // namespace

int run_sweep(const RunOptions& options, std::ostream& log) {
    ScenarioConfig cfg;
    try {
        cfg = parse_scenario_file(options.config_path);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    const std::vector<std::string> problems = validate_scenario(cfg);
    bool fatal = false;
    for (const std::string& p : problems) {
        // Off-lattice thresholds are snapped by the documented ceiling rule;
        // everything else blocks the run.
        const bool snapped = p.find("off-lattice") != std::string::npos;
        log << (snapped ? "note: " : "config error: ") << p << '\n';
        fatal = fatal || !snapped;
    }
    if (fatal) return kExitConfigError;

    if (options.seed_override) cfg.sim.seed = *options.seed_override;
    cfg.sim.threads = options.threads;
    const bool run_mc = options.mc_override.value_or(cfg.has_sim);
    if (run_mc && !cfg.has_sim)
        log << "note: --mc requested without a 'sim' section, using defaults\n";

    std::ofstream csv(options.out_path);
    if (!csv) {
        log << "config error: cannot open output path '" << options.out_path << "'\n";
        return kExitConfigError;
    }
    csv << "P_watts,C_joules,L,p_out_analytic,p_out_mc,mc_ci95,p_out_ub,chi_joules\n" << std::flush;

    try {
        for (double power : cfg.power_grid) {
            for (const auto& [capacity, levels] : cfg.battery_grid) {
                const auto started = std::chrono::steady_clock::now();
                NetworkScenario scenario = build_scenario(cfg, power, capacity, levels);

                switch (cfg.policy_mode) {
                    case PolicyMode::fixed:
                        break;
                    case PolicyMode::optimize_iid:
                        apply_policies(scenario,
                                       search_iid(scenario.relay_count(), scenario.relays[0],
                                                  scenario.radio, scenario.spec)
                                           .best_policies);
                        break;
                    case PolicyMode::optimize_full:
                        apply_policies(scenario, search_full(scenario).best_policies);
                        break;
                    case PolicyMode::optimize_heuristic:
                        apply_policies(scenario, search_heuristic(scenario).best_policies);
                        break;
                }

                const OutageReport analytic =
                    system_outage(scenario, solve_stationaries(scenario));
                const FlowConservationResult bound = upper_bound_outage(scenario);

                std::string mc_value;
                std::string mc_ci;
                if (run_mc) {
                    const SimReport mc = simulate(scenario, cfg.sim);
                    mc_value = fmt(mc.outage_rate);
                    mc_ci = fmt(mc.outage_ci95);
                }

                csv << fmt(power) << ',' << fmt(capacity) << ',' << levels << ','
                    << fmt(analytic.p_out) << ',' << mc_value << ',' << mc_ci << ','
                    << fmt(bound.p_out_ub) << ',' << join_thresholds(scenario) << '\n'
                    << std::flush;

                const double elapsed =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                        .count();
                log << "point P=" << fmt(power) << " C=" << fmt(capacity) << " L=" << levels
                    << ": p_out=" << fmt(analytic.p_out) << " (" << elapsed << " s)\n";
            }
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return kExitNumericError;
    }
    return kExitOk;
}

int validate_config(const std::string& config_path, std::ostream& out) {
    ScenarioConfig cfg;
    try {
        cfg = parse_scenario_file(config_path);
    } catch (const ConfigError& e) {
        out << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    const std::vector<std::string> problems = validate_scenario(cfg);
    if (problems.empty()) {
        out << "OK\n";
        return kExitOk;
    }
    for (const std::string& p : problems) out << p << '\n';
    return kExitConfigError;
}

}  // namespace etmrs
