#include "etmrs/optimizer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "etmrs/errors.hpp"

namespace etmrs {
namespace {

// Chain solve for one relay at one candidate threshold, reduced to the
// membership terms the outage kernel needs.
RelayTerms terms_for_threshold(const RelayConfig& relay, const RadioParams& radio,
                               const BatterySpec& spec, int chi_index) {
    RelayConfig candidate = relay;
    candidate.policy = RelayEnergyPolicy::from_beta_index(spec, chi_index - spec.alpha_index());
    const TransitionMatrix z = build_transition_matrix(candidate.sr, radio, spec, candidate.policy);
    return relay_terms(candidate, radio, spec, stationary_distribution(z));
}

// Memo of per-relay terms across candidate thresholds; the chain of a relay
// depends only on its own threshold, which is what keeps the exhaustive
// search at O(N*L) solves.
class TermCache {
public:
    TermCache(const NetworkScenario& scenario)
        : scenario_(scenario),
          cache_(scenario.relays.size(),
                 std::vector<RelayTerms>(scenario.spec.levels() + 1,
                                         RelayTerms{-1.0, -1.0, -1.0})) {}

    const RelayTerms& get(int relay, int chi_index) {
        RelayTerms& slot = cache_[relay][chi_index];
        if (slot.member < 0.0)
            slot = terms_for_threshold(scenario_.relays[relay], scenario_.radio, scenario_.spec,
                                       chi_index);
        return slot;
    }

private:
    const NetworkScenario& scenario_;
    std::vector<std::vector<RelayTerms>> cache_;
};

std::vector<RelayEnergyPolicy> policies_from_chis(const BatterySpec& spec,
                                                  const std::vector<int>& chi_indices) {
    std::vector<RelayEnergyPolicy> out;
    out.reserve(chi_indices.size());
    for (int c : chi_indices)
        out.push_back(RelayEnergyPolicy::from_beta_index(spec, c - spec.alpha_index()));
    return out;
}

}  // namespace

HeuristicGrid heuristic_grid(const NetworkScenario& scenario) {
    double ratio_max = -std::numeric_limits<double>::infinity();
    double ratio_min = std::numeric_limits<double>::infinity();
    for (const RelayConfig& r : scenario.relays) {
        const double ratio = r.sr.lambda / r.rd.lambda;
        ratio_max = std::max(ratio_max, ratio);
        ratio_min = std::min(ratio_min, ratio);
    }
    const double eps1 = scenario.spec.step();
    HeuristicGrid grid;
    grid.lambda_max = ratio_max;
    grid.lambda_min = ratio_min;
    grid.step = eps1 / ratio_max;
    grid.z_min = eps1 / ratio_max;
    grid.z_max = scenario.spec.level_energy(scenario.spec.levels()) / ratio_min;
    grid.size = static_cast<std::size_t>(
                    std::floor((grid.z_max - grid.z_min) / grid.step * (1.0 + 1e-12))) +
                1;
    return grid;
}

ThresholdSearchResult search_iid(int relay_count, const RelayConfig& shared,
                                 const RadioParams& radio, const BatterySpec& spec) {
    ThresholdSearchResult result;
    result.method = ThresholdSearchResult::Method::iid_exhaustive;
    result.best_outage = std::numeric_limits<double>::infinity();
    result.best_z = std::numeric_limits<double>::quiet_NaN();
    result.evaluations = 0;

    RelayEnergyPolicy best_policy{1, spec.alpha_index() + 1};
    for (int chi = spec.alpha_index() + 1; chi <= spec.levels(); ++chi) {
        RelayConfig candidate = shared;
        candidate.policy = RelayEnergyPolicy::from_beta_index(spec, chi - spec.alpha_index());
        const TransitionMatrix z = build_transition_matrix(candidate.sr, radio, spec, candidate.policy);
        const OutageReport report =
            system_outage_iid(relay_count, candidate, radio, spec, stationary_distribution(z));
        ++result.evaluations;
        if (report.p_out < result.best_outage) {
            result.best_outage = report.p_out;
            best_policy = candidate.policy;
        }
    }
    result.best_policies.assign(relay_count, best_policy);
    return result;
}

ThresholdSearchResult search_full(const NetworkScenario& scenario) {
    const int n = scenario.relay_count();
    const BatterySpec& spec = scenario.spec;
    const int choices = spec.levels() - spec.alpha_index();

    double lattice = 1.0;
    for (int u = 0; u < n; ++u) lattice *= choices;
    if (lattice > static_cast<double>(kMaxFullSearchEvaluations))
        throw SearchSpaceTooLarge("threshold lattice has " + std::to_string(lattice) +
                                  " points, guard is " +
                                  std::to_string(kMaxFullSearchEvaluations));

    TermCache cache(scenario);
    std::vector<int> chi(n, spec.alpha_index() + 1);
    std::vector<RelayTerms> terms(n);

    ThresholdSearchResult result;
    result.method = ThresholdSearchResult::Method::full_exhaustive;
    result.best_outage = std::numeric_limits<double>::infinity();
    result.best_z = std::numeric_limits<double>::quiet_NaN();
    result.evaluations = 0;
    std::vector<int> best_chi = chi;

    // Odometer over the lattice in lexicographic order; strict improvement
    // keeps the lexicographically smallest vector on ties.
    while (true) {
        for (int u = 0; u < n; ++u) terms[u] = cache.get(u, chi[u]);
        const detail::OutageEval eval = detail::evaluate_outage(
            terms, scenario.radio.noise_power, scenario.radio.snr_threshold);
        ++result.evaluations;
        if (eval.p_out < result.best_outage) {
            result.best_outage = eval.p_out;
            best_chi = chi;
        }
        int u = n - 1;
        while (u >= 0 && chi[u] == spec.levels()) {
            chi[u] = spec.alpha_index() + 1;
            --u;
        }
        if (u < 0) break;
        ++chi[u];
    }
    result.best_policies = policies_from_chis(spec, best_chi);
    return result;
}

ThresholdSearchResult search_heuristic(const NetworkScenario& scenario) {
    const int n = scenario.relay_count();
    const BatterySpec& spec = scenario.spec;
    const HeuristicGrid grid = heuristic_grid(scenario);
    const double eps1 = spec.step();

    TermCache cache(scenario);
    std::vector<RelayTerms> terms(n);
    std::vector<int> chi(n);

    ThresholdSearchResult result;
    result.method = ThresholdSearchResult::Method::heuristic_z;
    result.best_outage = std::numeric_limits<double>::infinity();
    result.best_z = grid.z_min;
    result.evaluations = 0;
    std::vector<int> best_chi;

    for (std::size_t g = 0; g < grid.size; ++g) {
        const double z = grid.z_min + static_cast<double>(g) * grid.step;
        for (int u = 0; u < n; ++u) {
            const RelayConfig& r = scenario.relays[u];
            const double beta_raw = z * r.sr.lambda / r.rd.lambda;
            // Ceiling-to-level rule with the capacity clamp beta <= C - alpha.
            double scaled = beta_raw / eps1;
            const double rounded = std::round(scaled);
            if (std::abs(scaled - rounded) <= 1e-9 * std::max(1.0, scaled)) scaled = rounded;
            int beta_index = static_cast<int>(std::ceil(scaled));
            beta_index = std::max(1, std::min(beta_index, spec.levels() - spec.alpha_index()));
            chi[u] = spec.alpha_index() + beta_index;
            terms[u] = cache.get(u, chi[u]);
        }
        const detail::OutageEval eval = detail::evaluate_outage(
            terms, scenario.radio.noise_power, scenario.radio.snr_threshold);
        ++result.evaluations;
        if (eval.p_out < result.best_outage) {
            result.best_outage = eval.p_out;
            result.best_z = z;
            best_chi = chi;
        }
    }
    result.best_policies = policies_from_chis(spec, best_chi);
    return result;
}

}  // namespace etmrs
