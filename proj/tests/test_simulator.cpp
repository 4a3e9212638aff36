#include <doctest.h>

#include <cmath>
#include <vector>

#include "etmrs/simulator.hpp"

using namespace etmrs;

namespace {

NetworkScenario small_network(double power, int levels) {
    const RadioParams radio(power, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2e-5, levels, 1e-7);
    std::vector<RelayConfig> relays;
    relays.push_back(RelayConfig{NakagamiLink(2.0, path_loss_gain(6.0, 3.0)),
                                 RayleighLink(path_loss_gain(14.0, 3.0)),
                                 RelayEnergyPolicy::from_threshold(spec, 4e-6)});
    relays.push_back(RelayConfig{NakagamiLink(2.0, path_loss_gain(8.0, 3.0)),
                                 RayleighLink(path_loss_gain(12.0, 3.0)),
                                 RelayEnergyPolicy::from_threshold(spec, 2e-6)});
    return NetworkScenario{std::move(relays), radio, spec};
}

}  // namespace

TEST_CASE("per-block energy bookkeeping balances exactly") {
    const NetworkScenario scenario = small_network(1.0, 20);

    for (BatteryMode mode : {BatteryMode::discrete, BatteryMode::continuous}) {
        BlockSimulator sim(scenario, mode);
        Rng rng(42);
        for (int b = 0; b < 5000; ++b) {
            std::vector<double> before(2);
            for (int u = 0; u < 2; ++u) before[u] = sim.residual_energy(u);
            sim.step(rng);
            for (int u = 0; u < 2; ++u) {
                const double after = sim.residual_energy(u);
                const double delta = sim.last_harvested(u) - sim.last_spent(u);
                CHECK(after - before[u] ==
                      doctest::Approx(delta).epsilon(1e-12).scale(scenario.spec.capacity()));
                CHECK(after >= -1e-18);
                CHECK(after <= scenario.spec.capacity() * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("no harvested power means certain outage") {
    NetworkScenario scenario = small_network(1.0, 20);
    NetworkScenario dead{scenario.relays, RadioParams(1e-300, 1e-12, 1.0, 0.5), scenario.spec};
    SimConfig cfg;
    cfg.blocks = 20'000;
    cfg.warmup = 100;
    cfg.seed = 7;
    const SimReport report = simulate(dead, cfg);
    CHECK(report.outage_rate == 1.0);
    CHECK(report.empty_set_rate == 1.0);
}

TEST_CASE("huge power with a vanishing rate drives outage to zero") {
    // One warmup block at huge power fills every battery; with a ~zero SNR
    // threshold and a horizon shorter than the drain time no outage occurs.
    const RadioParams radio(1e6, 1e-12, 1e-6, 0.5);
    const BatterySpec spec(2e-4, 200, 1e-7);
    std::vector<RelayConfig> relays;
    for (double d : {6.0, 9.0}) {
        relays.push_back(RelayConfig{NakagamiLink(2.0, path_loss_gain(d, 3.0)),
                                     RayleighLink(path_loss_gain(20.0 - d, 3.0)),
                                     RelayEnergyPolicy::from_threshold(spec, 4e-6)});
    }
    const NetworkScenario hot{std::move(relays), radio, spec};
    SimConfig cfg;
    cfg.blocks = 40;
    cfg.warmup = 1;
    cfg.seed = 7;
    const SimReport report = simulate(hot, cfg);
    CHECK(report.outage_rate == 0.0);
}

TEST_CASE("simulation is deterministic and thread-count independent") {
    const NetworkScenario scenario = small_network(1.0, 20);
    SimConfig cfg;
    cfg.blocks = 60'000;
    cfg.warmup = 500;
    cfg.stream_length = 8'192;
    cfg.seed = 2024;

    cfg.threads = 1;
    const SimReport serial = simulate(scenario, cfg);
    const SimReport repeat = simulate(scenario, cfg);
    cfg.threads = 8;
    const SimReport parallel = simulate(scenario, cfg);

    CHECK(serial.outage_rate == repeat.outage_rate);
    CHECK(serial.outage_rate == parallel.outage_rate);
    CHECK(serial.empty_set_rate == parallel.empty_set_rate);
    CHECK(serial.if_mode_rate == parallel.if_mode_rate);
    CHECK(serial.level_occupancy == parallel.level_occupancy);
    CHECK(serial.subset_frequency == parallel.subset_frequency);
    CHECK(serial.outage_rate >= serial.empty_set_rate);  // empty set is always an outage
}

TEST_CASE("decoding-set frequencies match the analytic subset probabilities") {
    const NetworkScenario scenario = small_network(1.5, 20);
    SimConfig cfg;
    cfg.blocks = 400'000;
    cfg.warmup = 5'000;
    cfg.seed = 99;
    cfg.threads = 4;
    const SimReport report = simulate(scenario, cfg);

    const auto stationaries = solve_stationaries(scenario);
    const double blocks = static_cast<double>(report.blocks);
    for (std::uint32_t mask = 0; mask < 4; ++mask) {
        const double expected =
            mask == 0 ? empty_set_probability(scenario, stationaries)
                      : subset_probability(scenario, stationaries, mask);
        const auto it = report.subset_frequency.find(mask);
        const double observed = it == report.subset_frequency.end() ? 0.0 : it->second;
        const double sigma = std::sqrt(std::max(expected * (1.0 - expected), 1e-12) / blocks);
        // 3 sigma plus a small allowance for within-stream correlation
        CHECK(std::abs(observed - expected) <= 3.0 * sigma + 2e-3);
    }
}

TEST_CASE("chain occupancy oracle reproduces the stationary distribution") {
    const RadioParams radio(1.0, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2e-5, 10, 1e-7);
    const NakagamiLink link(2.0, path_loss_gain(6.0, 3.0));
    const RelayEnergyPolicy policy = RelayEnergyPolicy::from_threshold(spec, 4e-6);

    SimConfig cfg;
    cfg.blocks = 2'000'000;
    cfg.warmup = 10'000;
    cfg.seed = 5;
    const std::vector<std::uint64_t> counts =
        simulate_chain_occupancy(link, radio, spec, policy, cfg);
    const std::vector<std::uint64_t> again =
        simulate_chain_occupancy(link, radio, spec, policy, cfg);
    CHECK(counts == again);  // seed determinism

    const TransitionMatrix z = build_transition_matrix(link, radio, spec, policy);
    const StationaryDistribution pi = stationary_distribution(z);
    const double total = static_cast<double>(cfg.blocks);
    for (int i = 0; i <= spec.levels(); ++i) {
        const double expected = pi.pi[i];
        const double observed = static_cast<double>(counts[i]) / total;
        const double sigma = std::sqrt(std::max(expected * (1.0 - expected), 1e-12) / total);
        // within-stream autocorrelation widens the binomial band
        CHECK(std::abs(observed - expected) <= 3.0 * sigma + 2e-3);
    }

    // long-run IF-mode occupancy against the stationary mode split
    const ModeProbabilities mode = mode_probabilities(pi, policy);
    double if_blocks = 0.0;
    for (int i = policy.chi_index; i <= spec.levels(); ++i)
        if_blocks += static_cast<double>(counts[i]);
    const double sigma_if = std::sqrt(mode.if_mode * (1.0 - mode.if_mode) / total);
    CHECK(std::abs(if_blocks / total - mode.if_mode) <= 3.0 * sigma_if + 2e-3);
}

TEST_CASE("unreachable threshold keeps all mass at the start level") {
    const RadioParams radio(1e-300, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2e-5, 10, 1e-7);
    const NakagamiLink link(2.0, 1e-6);
    const RelayEnergyPolicy policy = RelayEnergyPolicy::from_threshold(spec, 4e-6);
    SimConfig cfg;
    cfg.blocks = 10'000;
    cfg.warmup = 100;
    const std::vector<std::uint64_t> counts =
        simulate_chain_occupancy(link, radio, spec, policy, cfg);
    CHECK(counts[0] == cfg.blocks);
}

TEST_CASE("long-run energy flow balances in a large continuous battery") {
    NetworkScenario scenario = small_network(1.0, 20);
    // widen the battery so overflow is essentially never hit
    NetworkScenario big{scenario.relays, scenario.radio, BatterySpec(2e-3, 2000, 1e-7)};
    for (RelayConfig& r : big.relays) r.policy = RelayEnergyPolicy::from_threshold(big.spec, 4e-6);
    SimConfig cfg;
    cfg.blocks = 500'000;
    cfg.warmup = 20'000;
    cfg.battery_mode = BatteryMode::continuous;
    cfg.seed = 17;
    cfg.threads = 4;
    const SimReport report = simulate(big, cfg);
    for (int u = 0; u < big.relay_count(); ++u) {
        const double in = report.energy_harvested[u];
        const double out = report.energy_spent[u];
        CHECK(std::abs(in - out) <= 0.01 * std::max(in, out));
    }
}
