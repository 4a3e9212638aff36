#include "etmrs/bounds.hpp"

#include <cmath>

namespace etmrs {
namespace {

double q_from_params(double p_fail, double eta, double source_power, double lambda_sr,
                     double alpha, double beta) {
    if (p_fail >= 1.0) return 0.0;
    const double success = 1.0 - p_fail;
    const double denom =
        1.0 / success + (2.0 * alpha + 2.0 * beta * success) / (eta * source_power * lambda_sr * success);
    return 1.0 / denom;
}

// Back-solve the EH-mode probability from the energy balance: with mean
// harvest E and mean IF-mode spend D = alpha + (1-p_fail)*beta,
// p * E = (1 - p) * D.
double p_eh_from_balance(double p_fail, double eta, double source_power, double lambda_sr,
                         double alpha, double beta) {
    const double mean_harvest = 0.5 * eta * source_power * lambda_sr;
    const double mean_spend = alpha + (1.0 - p_fail) * beta;
    return mean_spend / (mean_harvest + mean_spend);
}

}  // namespace

double decoding_probability_infinite(const NakagamiLink& link, const RadioParams& radio,
                                     const BatterySpec& spec, const RelayEnergyPolicy& policy) {
    return q_from_params(decode_failure_prob(link, radio), radio.eta, radio.source_power,
                         link.lambda, spec.alpha(), policy.beta(spec));
}

FlowConservationResult upper_bound_outage(const NetworkScenario& scenario) {
    const int n = scenario.relay_count();
    FlowConservationResult result;
    result.q.reserve(n);
    result.p_eh.reserve(n);
    std::vector<RelayTerms> terms;
    terms.reserve(n);
    for (const RelayConfig& r : scenario.relays) {
        const double p_fail = decode_failure_prob(r.sr, scenario.radio);
        const double beta = r.policy.beta(scenario.spec);
        const double q = q_from_params(p_fail, scenario.radio.eta, scenario.radio.source_power,
                                       r.sr.lambda, scenario.spec.alpha(), beta);
        result.q.push_back(q);
        result.p_eh.push_back(p_eh_from_balance(p_fail, scenario.radio.eta,
                                                scenario.radio.source_power, r.sr.lambda,
                                                scenario.spec.alpha(), beta));
        terms.push_back(RelayTerms{q, 1.0 - q, std::sqrt(2.0 * beta) * r.rd.sigma});
    }
    result.report = detail::evaluate_outage_report(terms, scenario.radio.noise_power,
                                                   scenario.radio.snr_threshold,
                                                   OutageReport::Method::general);
    result.p_out_ub = result.report.p_out;
    return result;
}

FlowConservationResult upper_bound_outage_iid(int relay_count, const RelayConfig& shared,
                                              const RadioParams& radio, const BatterySpec& spec) {
    const double p_fail = decode_failure_prob(shared.sr, radio);
    const double beta = shared.policy.beta(spec);
    const double q = q_from_params(p_fail, radio.eta, radio.source_power, shared.sr.lambda,
                                   spec.alpha(), beta);
    const RelayTerms t{q, 1.0 - q, std::sqrt(2.0 * beta) * shared.rd.sigma};
    const detail::OutageEval eval =
        detail::evaluate_outage_iid(relay_count, t, radio.noise_power, radio.snr_threshold);

    FlowConservationResult result;
    result.q.assign(relay_count, q);
    result.p_eh.assign(relay_count,
                       p_eh_from_balance(p_fail, radio.eta, radio.source_power, shared.sr.lambda,
                                         spec.alpha(), beta));
    result.p_out_ub = eval.p_out;
    result.report.method = OutageReport::Method::iid;
    result.report.p_out = eval.p_out;
    result.report.p_empty = eval.p_empty;
    return result;
}

}  // namespace etmrs
