#pragma once

#include <cstddef>
#include <vector>

#include "etmrs/analysis.hpp"

namespace etmrs {

struct ThresholdSearchResult {
    enum class Method { iid_exhaustive, full_exhaustive, heuristic_z };

    std::vector<RelayEnergyPolicy> best_policies;
    double best_outage;
    std::size_t evaluations;
    Method method;
    double best_z;  // heuristic_z only, NaN otherwise
};

/// Grid over the scalar factor z of the heuristic search: thresholds are
/// proportional to the first-to-second-hop gain ratio, swept from the value
/// putting every relay at the lowest feasible threshold to the value pinning
/// all of them at the top level.
struct HeuristicGrid {
    double z_min;
    double z_max;
    double step;          // epsilon_1 / lambda_max
    std::size_t size;     // number of grid points
    double lambda_max;    // extremes of lambda_sr / lambda_rd over relays
    double lambda_min;
};

HeuristicGrid heuristic_grid(const NetworkScenario& scenario);

/// 1-D exhaustive search over the common threshold of a homogeneous network;
/// O(L) chain solves. Ties go to the smallest threshold.
ThresholdSearchResult search_iid(int relay_count, const RelayConfig& shared,
                                 const RadioParams& radio, const BatterySpec& spec);

/// N-D exhaustive search over the per-relay threshold lattice. Chains are
/// memoized per (relay, threshold) pair, so the cost is O(N*L) solves plus
/// one outage evaluation per lattice point. Throws SearchSpaceTooLarge when
/// the lattice exceeds the evaluation guard. Ties go to the
/// lexicographically smallest threshold vector.
ThresholdSearchResult search_full(const NetworkScenario& scenario);

/// Heuristic 1-D search over the scalar z; per-relay thresholds follow the
/// gain ratio, discretized with the ceiling rule and clamped at capacity.
ThresholdSearchResult search_heuristic(const NetworkScenario& scenario);

/// Evaluation guard for search_full.
inline constexpr std::size_t kMaxFullSearchEvaluations = 10'000'000;

}  // namespace etmrs
