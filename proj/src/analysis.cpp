#include "etmrs/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "etmrs/errors.hpp"
#include "etmrs/math_special.hpp"

namespace etmrs {
namespace {

void check_relay_count(int n) {
    if (n < 1) throw std::invalid_argument("scenario must contain at least one relay");
    if (n > kMaxRelays)
        throw TooManyRelays("exact subset enumeration supports up to " +
                            std::to_string(kMaxRelays) + " relays, got " + std::to_string(n));
}

// Contributions span many orders of magnitude at high source power; summing
// the largest first keeps the small ones from being cancelled away.
double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end(), std::greater<double>());
    double sum = 0.0;
    double carry = 0.0;  // Kahan compensation
    for (double t : terms) {
        const double y = t - carry;
        const double s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    }
    return sum;
}

double binomial_coefficient(int n, int k) {
    // n <= 20, exact in 64-bit integers.
    unsigned long long c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return static_cast<double>(c);
}

double amp_of(const RelayConfig& relay, const BatterySpec& spec) {
    return std::sqrt(2.0 * relay.policy.beta(spec)) * relay.rd.sigma;
}

double conditional_outage_value(const SnrGammaFit& fit, double v) {
    if (v <= 0.0) return 0.0;
    return regularized_lower_gamma(fit.shape, fit.rate * v);
}

}  // namespace

SnrGammaFit fit_snr_gamma(const double* amps, int k, double noise_power) {
    // Power sums of the per-relay Rayleigh scales; the sum's raw moments
    // follow from independence and the Rayleigh moment ladder
    // E[Y^r] with E[Y] = s sqrt(pi/2), E[Y^2] = 2 s^2, E[Y^3] = 3 s^3
    // sqrt(pi/2), E[Y^4] = 8 s^4.
    double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
    for (int j = 0; j < k; ++j) {
        const double a = amps[j];
        const double a2 = a * a;
        p1 += a;
        p2 += a2;
        p3 += a2 * a;
        p4 += a2 * a2;
    }
    const double pi = std::numbers::pi;
    const double s2 = 2.0 * p2 + (pi / 2.0) * (p1 * p1 - p2);  // E[S^2]
    const double s4 = 8.0 * p4 + 6.0 * pi * (p3 * p1 - p4) + 12.0 * (p2 * p2 - p4) +
                      6.0 * pi * (p2 * p1 * p1 - 2.0 * p3 * p1 + 2.0 * p4 - p2 * p2) +
                      (pi * pi / 4.0) *
                          (p1 * p1 * p1 * p1 - 6.0 * p1 * p1 * p2 + 3.0 * p2 * p2 +
                           8.0 * p1 * p3 - 6.0 * p4);  // E[S^4]
    const double variance = s4 - s2 * s2;
    const double shape = s2 * s2 / variance;
    return SnrGammaFit{shape, shape * noise_power / s2};
}

double OutageReport::probability_total() const {
    double total = p_empty;
    for (const SubsetTerm& t : per_subset) total += t.probability;
    return total;
}

DecodingSubset DecodingSubset::from_mask(const NetworkScenario& scenario, std::uint32_t mask) {
    const int n = scenario.relay_count();
    check_relay_count(n);
    if (mask == 0 || mask >= (1u << n))
        throw std::invalid_argument("DecodingSubset: mask must select a nonempty relay subset");
    double amps[kMaxRelays];
    int k = 0;
    for (int u = 0; u < n; ++u)
        if (mask >> u & 1u) amps[k++] = amp_of(scenario.relays[u], scenario.spec);
    const SnrGammaFit fit = fit_snr_gamma(amps, k, scenario.radio.noise_power);
    return DecodingSubset{mask, k, fit.rate, fit.shape};
}

std::vector<StationaryDistribution> solve_stationaries(const NetworkScenario& scenario) {
    std::vector<StationaryDistribution> out;
    out.reserve(scenario.relays.size());
    for (const RelayConfig& r : scenario.relays) {
        const TransitionMatrix z =
            build_transition_matrix(r.sr, scenario.radio, scenario.spec, r.policy);
        out.push_back(stationary_distribution(z));
    }
    return out;
}

RelayTerms relay_terms(const RelayConfig& relay, const RadioParams& radio,
                       const BatterySpec& spec, const StationaryDistribution& pi) {
    const ModeProbabilities mode = mode_probabilities(pi, relay.policy);
    const double p_fail = decode_failure_prob(relay.sr, radio);
    return RelayTerms{(1.0 - p_fail) * mode.if_mode, p_fail * mode.if_mode + mode.eh,
                      amp_of(relay, spec)};
}

double empty_set_probability(const NetworkScenario& scenario,
                             const std::vector<StationaryDistribution>& stationaries) {
    double p = 1.0;
    for (int u = 0; u < scenario.relay_count(); ++u)
        p *= relay_terms(scenario.relays[u], scenario.radio, scenario.spec, stationaries[u])
                 .nonmember;
    return p;
}

double subset_probability(const NetworkScenario& scenario,
                          const std::vector<StationaryDistribution>& stationaries,
                          std::uint32_t mask) {
    double p = 1.0;
    for (int u = 0; u < scenario.relay_count(); ++u) {
        const RelayTerms t =
            relay_terms(scenario.relays[u], scenario.radio, scenario.spec, stationaries[u]);
        p *= (mask >> u & 1u) ? t.member : t.nonmember;
    }
    return p;
}

double conditional_outage(const DecodingSubset& subset, const RadioParams& radio) {
    if (radio.snr_threshold <= 0.0) return 0.0;
    return regularized_lower_gamma(subset.shape, subset.a * radio.snr_threshold);
}

namespace detail {

OutageEval evaluate_outage(const std::vector<RelayTerms>& relays, double noise_power, double v) {
    const int n = static_cast<int>(relays.size());
    check_relay_count(n);
    const std::uint32_t subset_count = 1u << n;

    double p_empty = 1.0;
    for (const RelayTerms& t : relays) p_empty *= t.nonmember;

    std::vector<double> contributions;
    contributions.reserve(subset_count - 1);
    double probability_total = p_empty;
    double amps[kMaxRelays];
    for (std::uint32_t mask = 1; mask < subset_count; ++mask) {
        double prob = 1.0;
        int k = 0;
        for (int u = 0; u < n; ++u) {
            if (mask >> u & 1u) {
                prob *= relays[u].member;
                amps[k++] = relays[u].amp;
            } else {
                prob *= relays[u].nonmember;
            }
        }
        probability_total += prob;
        const SnrGammaFit fit = fit_snr_gamma(amps, k, noise_power);
        contributions.push_back(prob * conditional_outage_value(fit, v));
    }
    return OutageEval{p_empty + sorted_sum(contributions), p_empty, probability_total};
}

OutageEval evaluate_outage_iid(int relay_count, const RelayTerms& shared, double noise_power,
                               double v) {
    check_relay_count(relay_count);
    double p_empty = 1.0;
    for (int u = 0; u < relay_count; ++u) p_empty *= shared.nonmember;

    std::vector<double> contributions;
    contributions.reserve(relay_count);
    double probability_total = p_empty;
    double amps[kMaxRelays];
    for (int k = 1; k <= relay_count; ++k) {
        amps[k - 1] = shared.amp;
        double prob = binomial_coefficient(relay_count, k);
        for (int i = 0; i < k; ++i) prob *= shared.member;
        for (int i = 0; i < relay_count - k; ++i) prob *= shared.nonmember;
        probability_total += prob;
        const SnrGammaFit fit = fit_snr_gamma(amps, k, noise_power);
        contributions.push_back(prob * conditional_outage_value(fit, v));
    }
    return OutageEval{p_empty + sorted_sum(contributions), p_empty, probability_total};
}

OutageReport evaluate_outage_report(const std::vector<RelayTerms>& relays, double noise_power,
                                    double v, OutageReport::Method method) {
    const int n = static_cast<int>(relays.size());
    check_relay_count(n);
    const std::uint32_t subset_count = 1u << n;

    OutageReport report;
    report.method = method;
    report.p_empty = 1.0;
    for (const RelayTerms& t : relays) report.p_empty *= t.nonmember;

    report.per_subset.reserve(subset_count - 1);
    std::vector<double> contributions;
    contributions.reserve(subset_count - 1);
    double amps[kMaxRelays];
    for (std::uint32_t mask = 1; mask < subset_count; ++mask) {
        double prob = 1.0;
        int k = 0;
        for (int u = 0; u < n; ++u) {
            if (mask >> u & 1u) {
                prob *= relays[u].member;
                amps[k++] = relays[u].amp;
            } else {
                prob *= relays[u].nonmember;
            }
        }
        const SnrGammaFit fit = fit_snr_gamma(amps, k, noise_power);
        const double cond = conditional_outage_value(fit, v);
        report.per_subset.push_back(SubsetTerm{mask, prob, cond});
        contributions.push_back(prob * cond);
    }
    report.p_out = report.p_empty + sorted_sum(contributions);
    return report;
}

}  // namespace detail

OutageReport system_outage(const NetworkScenario& scenario,
                           const std::vector<StationaryDistribution>& stationaries) {
    const int n = scenario.relay_count();
    check_relay_count(n);
    std::vector<RelayTerms> terms;
    terms.reserve(n);
    for (int u = 0; u < n; ++u)
        terms.push_back(
            relay_terms(scenario.relays[u], scenario.radio, scenario.spec, stationaries[u]));
    return detail::evaluate_outage_report(terms, scenario.radio.noise_power,
                                          scenario.radio.snr_threshold,
                                          OutageReport::Method::general);
}

OutageReport system_outage_iid(int relay_count, const RelayConfig& shared,
                               const RadioParams& radio, const BatterySpec& spec,
                               const StationaryDistribution& pi) {
    check_relay_count(relay_count);
    const RelayTerms t = relay_terms(shared, radio, spec, pi);
    const detail::OutageEval eval =
        detail::evaluate_outage_iid(relay_count, t, radio.noise_power, radio.snr_threshold);

    OutageReport report;
    report.method = OutageReport::Method::iid;
    report.p_out = eval.p_out;
    report.p_empty = eval.p_empty;
    report.per_subset.reserve(relay_count);
    double amps[kMaxRelays];
    for (int k = 1; k <= relay_count; ++k) {
        amps[k - 1] = t.amp;
        double prob = binomial_coefficient(relay_count, k);
        for (int i = 0; i < k; ++i) prob *= t.member;
        for (int i = 0; i < relay_count - k; ++i) prob *= t.nonmember;
        const SnrGammaFit fit = fit_snr_gamma(amps, k, radio.noise_power);
        // Mask of the lexicographically first k-subset stands in for the
        // whole binomial class.
        report.per_subset.push_back(
            SubsetTerm{(1u << k) - 1u, prob,
                       regularized_lower_gamma(fit.shape, fit.rate * radio.snr_threshold)});
    }
    return report;
}

}  // namespace etmrs
