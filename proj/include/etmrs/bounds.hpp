#pragma once

#include <vector>

#include "etmrs/analysis.hpp"

namespace etmrs {

/// Infinite-capacity steady state obtained from flow conservation: mean
/// harvested energy balances mean spend, giving each relay's decoding-set
/// probability in closed form.
struct FlowConservationResult {
    std::vector<double> q;     // per-relay decoding-set probability
    std::vector<double> p_eh;  // per-relay EH-mode probability, back-solved
    double p_out_ub;           // outage probability upper-bounding performance
    OutageReport report;
};

/// Closed-form decoding-set probability of one relay with an infinite
/// battery. Returns 0 in the certain-decode-failure limit.
double decoding_probability_infinite(const NakagamiLink& link, const RadioParams& radio,
                                     const BatterySpec& spec, const RelayEnergyPolicy& policy);

/// Outage of the infinite-capacity network; decoding-set memberships become
/// independent Bernoulli(q_u) draws, the conditional-outage kernel is shared
/// with the finite-capacity analysis.
FlowConservationResult upper_bound_outage(const NetworkScenario& scenario);

/// Homogeneous collapse of the bound.
FlowConservationResult upper_bound_outage_iid(int relay_count, const RelayConfig& shared,
                                              const RadioParams& radio, const BatterySpec& spec);

}  // namespace etmrs
