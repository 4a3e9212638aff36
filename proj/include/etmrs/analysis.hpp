#pragma once

#include <cstdint>
#include <vector>

#include "etmrs/battery.hpp"
#include "etmrs/channel.hpp"

namespace etmrs {

/// Hard cap on exact subset enumeration (2^N bitmasks).
inline constexpr int kMaxRelays = 20;

/// Per-relay channel pair plus threshold policy.
struct RelayConfig {
    NakagamiLink sr;
    RayleighLink rd;
    RelayEnergyPolicy policy;
};

/// Everything needed to evaluate one network: relays, radio and the shared
/// battery lattice.
struct NetworkScenario {
    std::vector<RelayConfig> relays;
    RadioParams radio;
    BatterySpec spec;

    int relay_count() const { return static_cast<int>(relays.size()); }
};

/// One candidate decoding set, identified by a relay bitmask. The beamformed
/// SNR is approximated by a gamma distribution whose shape and rate match the
/// exact first two moments of the weighted Rayleigh sum; for k = 1 this is
/// the exact Rayleigh-power law (shape 1, rate N0 / (4 beta sigma^2)).
struct DecodingSubset {
    std::uint32_t mask;
    int k;         // popcount
    double a;      // gamma rate parameter of the SNR approximation
    double shape;  // gamma shape parameter (1 exactly when k == 1)

    static DecodingSubset from_mask(const NetworkScenario& scenario, std::uint32_t mask);
};

struct SubsetTerm {
    std::uint32_t mask;
    double probability;         // Pr{decoding set == mask}
    double conditional_outage;  // Pr{outage | mask}
};

struct OutageReport {
    enum class Method { general, iid };

    double p_out;
    double p_empty;
    std::vector<SubsetTerm> per_subset;  // nonempty subsets, in mask order
    Method method;

    /// p_empty + sum of per-subset probabilities; 1 up to rounding.
    double probability_total() const;
};

/// Per-relay quantities entering every subset product. `member` is the
/// probability the relay lands in the decoding set, `nonmember` its
/// complement event's probability, `amp` the relay's beamforming amplitude
/// scale sqrt(2 beta_u) * sigma_u.
struct RelayTerms {
    double member;
    double nonmember;
    double amp;
};

/// Gamma parameters of the conditional end-to-end SNR for a decoding set
/// with the given amplitude scales, matched to the exact first two moments
/// of the weighted Rayleigh sum.
struct SnrGammaFit {
    double shape;
    double rate;
};

SnrGammaFit fit_snr_gamma(const double* amps, int k, double noise_power);

/// Stationary battery distributions of all relays, one chain each.
std::vector<StationaryDistribution> solve_stationaries(const NetworkScenario& scenario);

RelayTerms relay_terms(const RelayConfig& relay, const RadioParams& radio,
                       const BatterySpec& spec, const StationaryDistribution& pi);

/// Probability that no relay both holds threshold energy and decodes.
double empty_set_probability(const NetworkScenario& scenario,
                             const std::vector<StationaryDistribution>& stationaries);

/// Probability that the decoding set equals exactly `mask`.
double subset_probability(const NetworkScenario& scenario,
                          const std::vector<StationaryDistribution>& stationaries,
                          std::uint32_t mask);

/// Gamma-approximate conditional outage Pr{SNR < v | decoding set}.
double conditional_outage(const DecodingSubset& subset, const RadioParams& radio);

/// Full-probability expansion of the system outage over all 2^N decoding
/// sets. Throws TooManyRelays beyond the enumeration cap.
OutageReport system_outage(const NetworkScenario& scenario,
                           const std::vector<StationaryDistribution>& stationaries);

/// Homogeneous fast path: the 2^N sum collapses to N+1 binomial terms.
OutageReport system_outage_iid(int relay_count, const RelayConfig& shared,
                               const RadioParams& radio, const BatterySpec& spec,
                               const StationaryDistribution& pi);

namespace detail {

/// Shared subset-outage kernel: exact full-probability sum given per-relay
/// membership terms. Used by both the finite-capacity analysis and the
/// infinite-capacity bound.
struct OutageEval {
    double p_out;
    double p_empty;
    double probability_total;
};

OutageEval evaluate_outage(const std::vector<RelayTerms>& relays, double noise_power, double v);
OutageEval evaluate_outage_iid(int relay_count, const RelayTerms& shared, double noise_power,
                               double v);
OutageReport evaluate_outage_report(const std::vector<RelayTerms>& relays, double noise_power,
                                    double v, OutageReport::Method method);

}  // namespace detail

}  // namespace etmrs
