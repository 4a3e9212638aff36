#include "etmrs/simulator.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace etmrs {
namespace {

struct StreamTotals {
    std::uint64_t blocks = 0;
    std::uint64_t outages = 0;
    std::uint64_t empty_sets = 0;
    std::vector<std::uint64_t> if_blocks;
    std::vector<std::vector<std::uint64_t>> level_counts;
    std::vector<std::uint64_t> subset_counts;
    std::vector<double> harvested;
    std::vector<double> spent;
};

}  // namespace

BlockSimulator::BlockSimulator(const NetworkScenario& scenario, BatteryMode mode)
    : scenario_(scenario), mode_(mode) {
    const int n = scenario.relay_count();
    if (n < 1) throw std::invalid_argument("BlockSimulator: scenario has no relays");
    level_.assign(n, 0);
    energy_.assign(n, 0.0);
    chi_joule_.reserve(n);
    beta_joule_.reserve(n);
    for (const RelayConfig& r : scenario.relays) {
        chi_joule_.push_back(r.policy.chi(scenario.spec));
        beta_joule_.push_back(r.policy.beta(scenario.spec));
    }
    last_harvested_.assign(n, 0.0);
    last_spent_.assign(n, 0.0);
}

double BlockSimulator::residual_energy(int u) const {
    return mode_ == BatteryMode::discrete ? scenario_.spec.level_energy(level_[u]) : energy_[u];
}

int BlockSimulator::residual_level(int u) const { return level_[u]; }

BlockSimulator::BlockOutcome BlockSimulator::step(Rng& rng) {
    const int n = scenario_.relay_count();
    const RadioParams& radio = scenario_.radio;
    const BatterySpec& spec = scenario_.spec;
    const double decode_gain =
        radio.snr_threshold * radio.noise_power / radio.source_power;  // H needed to decode

    BlockOutcome outcome{false, 0u, 0u};
    for (int u = 0; u < n; ++u) {
        const RelayConfig& relay = scenario_.relays[u];
        const bool if_mode = mode_ == BatteryMode::discrete
                                 ? level_[u] >= relay.policy.chi_index
                                 : energy_[u] >= chi_joule_[u];
        const double h = nakagami_power_sample(relay.sr, rng);
        last_harvested_[u] = 0.0;
        last_spent_[u] = 0.0;
        if (if_mode) {
            outcome.if_mask |= 1u << u;
            double spend = spec.alpha();
            if (h >= decode_gain) {
                outcome.decoding_mask |= 1u << u;
                spend += beta_joule_[u];
            }
            if (mode_ == BatteryMode::discrete)
                level_[u] -= static_cast<int>(std::llround(spend / spec.step()));
            else
                energy_[u] -= spend;
            last_spent_[u] = spend;
        } else {
            const double harvested = 0.5 * radio.eta * radio.source_power * h;
            if (mode_ == BatteryMode::discrete) {
                const int gain = discretize_harvest(harvested, spec);
                const int credited = std::min(gain, spec.levels() - level_[u]);
                level_[u] += credited;
                last_harvested_[u] = spec.level_energy(credited);
            } else {
                const double credited = std::min(harvested, spec.capacity() - energy_[u]);
                energy_[u] += credited;
                last_harvested_[u] = credited;
            }
        }
    }

    if (outcome.decoding_mask == 0u) {
        outcome.outage = true;
        return outcome;
    }
    double amplitude_sum = 0.0;
    for (int u = 0; u < n; ++u) {
        if (outcome.decoding_mask >> u & 1u) {
            amplitude_sum += std::sqrt(2.0 * beta_joule_[u]) *
                             rayleigh_amplitude_sample(scenario_.relays[u].rd, rng);
        }
    }
    const double snr = amplitude_sum * amplitude_sum / radio.noise_power;
    outcome.outage = snr < radio.snr_threshold;
    return outcome;
}

SimReport simulate(const NetworkScenario& scenario, const SimConfig& cfg) {
    if (cfg.blocks < 1) throw std::invalid_argument("simulate: blocks must be >= 1");
    if (cfg.stream_length < 1) throw std::invalid_argument("simulate: stream_length must be >= 1");
    const int n = scenario.relay_count();
    const int level_count = scenario.spec.levels() + 1;
    const bool track_subsets = n <= 16;

    const std::uint64_t stream_count = (cfg.blocks + cfg.stream_length - 1) / cfg.stream_length;
    std::vector<StreamTotals> totals(stream_count);

    auto run_stream = [&](std::uint64_t s) {
        StreamTotals& acc = totals[s];
        acc.blocks = std::min(cfg.stream_length, cfg.blocks - s * cfg.stream_length);
        acc.if_blocks.assign(n, 0);
        acc.level_counts.assign(n, std::vector<std::uint64_t>(level_count, 0));
        if (track_subsets) acc.subset_counts.assign(1u << n, 0);
        acc.harvested.assign(n, 0.0);
        acc.spent.assign(n, 0.0);

        Rng rng = make_stream_rng(cfg.seed, s);
        BlockSimulator sim(scenario, cfg.battery_mode);
        for (std::uint64_t b = 0; b < cfg.warmup; ++b) sim.step(rng);
        for (std::uint64_t b = 0; b < acc.blocks; ++b) {
            for (int u = 0; u < n; ++u) {
                const int lvl = cfg.battery_mode == BatteryMode::discrete
                                    ? sim.residual_level(u)
                                    : discretize_harvest(sim.residual_energy(u), scenario.spec);
                ++acc.level_counts[u][lvl];
            }
            const BlockSimulator::BlockOutcome out = sim.step(rng);
            if (out.outage) ++acc.outages;
            if (out.decoding_mask == 0u) ++acc.empty_sets;
            if (track_subsets) ++acc.subset_counts[out.decoding_mask];
            for (int u = 0; u < n; ++u) {
                if (out.if_mask >> u & 1u) ++acc.if_blocks[u];
                acc.harvested[u] += sim.last_harvested(u);
                acc.spent[u] += sim.last_spent(u);
            }
        }
    };

    const int workers = std::max(1, cfg.threads);
    if (workers == 1 || stream_count == 1) {
        for (std::uint64_t s = 0; s < stream_count; ++s) run_stream(s);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (std::uint64_t s = next.fetch_add(1); s < stream_count; s = next.fetch_add(1))
                    run_stream(s);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    // Deterministic merge in stream order.
    SimReport report;
    report.blocks = 0;
    std::uint64_t outages = 0;
    std::uint64_t empty_sets = 0;
    std::vector<std::uint64_t> if_blocks(n, 0);
    std::vector<std::vector<std::uint64_t>> level_counts(
        n, std::vector<std::uint64_t>(level_count, 0));
    std::vector<std::uint64_t> subset_counts(track_subsets ? (1u << n) : 0, 0);
    report.energy_harvested.assign(n, 0.0);
    report.energy_spent.assign(n, 0.0);
    for (const StreamTotals& acc : totals) {
        report.blocks += acc.blocks;
        outages += acc.outages;
        empty_sets += acc.empty_sets;
        for (int u = 0; u < n; ++u) {
            if_blocks[u] += acc.if_blocks[u];
            report.energy_harvested[u] += acc.harvested[u];
            report.energy_spent[u] += acc.spent[u];
            for (int l = 0; l < level_count; ++l) level_counts[u][l] += acc.level_counts[u][l];
        }
        for (std::size_t m = 0; m < subset_counts.size(); ++m)
            subset_counts[m] += acc.subset_counts[m];
    }

    const double blocks_d = static_cast<double>(report.blocks);
    report.outage_rate = static_cast<double>(outages) / blocks_d;
    report.outage_ci95 =
        1.96 * std::sqrt(report.outage_rate * (1.0 - report.outage_rate) / blocks_d);
    report.empty_set_rate = static_cast<double>(empty_sets) / blocks_d;
    report.if_mode_rate.resize(n);
    report.level_occupancy.assign(n, std::vector<double>(level_count, 0.0));
    for (int u = 0; u < n; ++u) {
        report.if_mode_rate[u] = static_cast<double>(if_blocks[u]) / blocks_d;
        for (int l = 0; l < level_count; ++l)
            report.level_occupancy[u][l] = static_cast<double>(level_counts[u][l]) / blocks_d;
        report.energy_harvested[u] /= blocks_d;
        report.energy_spent[u] /= blocks_d;
    }
    for (std::size_t m = 0; m < subset_counts.size(); ++m) {
        if (subset_counts[m] > 0)
            report.subset_frequency[static_cast<std::uint32_t>(m)] =
                static_cast<double>(subset_counts[m]) / blocks_d;
    }
    return report;
}

std::vector<std::uint64_t> simulate_chain_occupancy(const NakagamiLink& link,
                                                    const RadioParams& radio,
                                                    const BatterySpec& spec,
                                                    const RelayEnergyPolicy& policy,
                                                    const SimConfig& cfg) {
    std::vector<std::uint64_t> counts(spec.levels() + 1, 0);
    Rng rng = make_stream_rng(cfg.seed, 0);
    const double decode_gain = radio.snr_threshold * radio.noise_power / radio.source_power;

    int level = 0;
    const auto advance = [&]() {
        if (level >= policy.chi_index) {
            const double h = nakagami_power_sample(link, rng);
            level -= h >= decode_gain ? policy.chi_index : spec.alpha_index();
        } else {
            const double h = nakagami_power_sample(link, rng);
            const double harvested = 0.5 * radio.eta * radio.source_power * h;
            level = std::min(level + discretize_harvest(harvested, spec), spec.levels());
        }
    };
    for (std::uint64_t b = 0; b < cfg.warmup; ++b) advance();
    for (std::uint64_t b = 0; b < cfg.blocks; ++b) {
        ++counts[level];
        advance();
    }
    return counts;
}

}  // namespace etmrs
