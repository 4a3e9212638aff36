#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "etmrs/analysis.hpp"
#include "etmrs/rng.hpp"

namespace etmrs {

enum class BatteryMode {
    discrete,    // exact chain: harvested energy is floored to a level
    continuous,  // continuous charging, the large-L reference
};

struct SimConfig {
    std::uint64_t blocks = 1'000'000;  // counted transmission blocks
    std::uint64_t seed = 1;
    BatteryMode battery_mode = BatteryMode::discrete;
    std::uint64_t warmup = 10'000;  // blocks discarded per stream before counting
    int threads = 1;
    // Counted blocks per RNG substream. Streams are fixed by (blocks,
    // stream_length) alone, so results are identical for any thread count.
    std::uint64_t stream_length = 65'536;
};

struct SimReport {
    double outage_rate;
    double outage_ci95;  // binomial 95% half-width
    double empty_set_rate;
    std::uint64_t blocks;
    std::vector<double> if_mode_rate;                  // per relay
    std::vector<std::vector<double>> level_occupancy;  // per relay, levels 0..L
    std::map<std::uint32_t, double> subset_frequency;  // decoding-set mask -> rate (N <= 16)
    std::vector<double> energy_harvested;              // per relay, joules per counted block
    std::vector<double> energy_spent;                  // per relay, joules per counted block
};

/// One independent replication of the block protocol; exposed so tests can
/// drive single blocks and check energy bookkeeping.
class BlockSimulator {
public:
    BlockSimulator(const NetworkScenario& scenario, BatteryMode mode);

    struct BlockOutcome {
        bool outage;
        std::uint32_t decoding_mask;
        std::uint32_t if_mask;  // relays that started the block in IF mode
    };

    BlockOutcome step(Rng& rng);

    double residual_energy(int u) const;
    int residual_level(int u) const;  // discrete mode only
    double last_harvested(int u) const { return last_harvested_[u]; }
    double last_spent(int u) const { return last_spent_[u]; }

private:
    const NetworkScenario& scenario_;
    BatteryMode mode_;
    std::vector<int> level_;        // discrete state
    std::vector<double> energy_;    // continuous state, joules
    std::vector<double> chi_joule_;
    std::vector<double> beta_joule_;
    std::vector<double> last_harvested_;
    std::vector<double> last_spent_;
};

/// Block-level Monte Carlo of the full protocol. Counted blocks are split
/// into substreams of cfg.stream_length, each warmed up independently;
/// totals are merged in stream order, so any thread count reproduces the
/// single-threaded result bit for bit.
SimReport simulate(const NetworkScenario& scenario, const SimConfig& cfg);

/// Occupancy counts over levels 0..L of one relay's battery chain after
/// warmup, from a single stream of cfg.blocks steps (oracle for the
/// stationary solve). Discrete mode only.
std::vector<std::uint64_t> simulate_chain_occupancy(const NakagamiLink& link,
                                                    const RadioParams& radio,
                                                    const BatterySpec& spec,
                                                    const RelayEnergyPolicy& policy,
                                                    const SimConfig& cfg);

}  // namespace etmrs
