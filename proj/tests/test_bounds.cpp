#include <doctest.h>

#include <cmath>
#include <vector>

#include "etmrs/bounds.hpp"

using namespace etmrs;

namespace {

NetworkScenario homogeneous(int n, double power, double lambda_sr, double lambda_rd,
                            double chi_raw) {
    const RadioParams radio(power, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2e-5, 40, 1e-7);
    const RelayConfig shared{NakagamiLink(2.0, lambda_sr), RayleighLink(lambda_rd),
                             RelayEnergyPolicy::from_threshold(spec, chi_raw)};
    return NetworkScenario{std::vector<RelayConfig>(n, shared), radio, spec};
}

}  // namespace

TEST_CASE("decoding probability with infinite capacity, hand value") {
    // decode failure ~ 0 at a negligible rate threshold
    const RadioParams radio(1.0, 1e-12, 1e-15, 0.5);
    const BatterySpec spec(1e-5, 100, 1e-7);
    const NakagamiLink link(2.0, 1e-5);
    const RelayEnergyPolicy policy = RelayEnergyPolicy::from_threshold(spec, 1.1e-6);  // beta 1e-6
    CHECK(policy.beta(spec) == doctest::Approx(1e-6).epsilon(1e-12));
    const double q = decoding_probability_infinite(link, radio, spec, policy);
    CHECK(q == doctest::Approx(1.0 / 1.44).epsilon(1e-9));
}

TEST_CASE("decoding probability limits and monotonicity") {
    const BatterySpec spec(1e-5, 100, 1e-7);
    const RelayEnergyPolicy policy = RelayEnergyPolicy::from_threshold(spec, 1.1e-6);

    // certain decode failure: enormous rate threshold
    const RadioParams hopeless(1e-6, 1e-3, 20.0, 0.5);
    CHECK(decoding_probability_infinite(NakagamiLink(2.0, 1e-9), hopeless, spec, policy) == 0.0);

    // q grows with P*lambda_sr
    double prev = 0.0;
    for (double p = 0.1; p <= 100.0; p *= 10.0) {
        const double q = decoding_probability_infinite(NakagamiLink(2.0, 1e-5),
                                                       RadioParams(p, 1e-12, 1.0, 0.5), spec,
                                                       policy);
        CHECK(q > prev);
        CHECK(q < 1.0);
        prev = q;
    }
    // q shrinks as beta grows
    prev = 1.0;
    for (int beta = 1; beta <= 90; beta += 11) {
        const double q = decoding_probability_infinite(
            NakagamiLink(2.0, 1e-5), RadioParams(1.0, 1e-12, 1.0, 0.5), spec,
            RelayEnergyPolicy::from_beta_index(spec, beta));
        CHECK(q < prev);
        prev = q;
    }
}

TEST_CASE("flow balance holds for the back-solved EH probability") {
    NetworkScenario scenario = homogeneous(3, 2.0, 7.9e-6, 1.2e-7, 3e-6);
    scenario.relays[1].sr = NakagamiLink(2.0, 2.5e-6);
    scenario.relays[2].policy = RelayEnergyPolicy::from_threshold(scenario.spec, 5e-6);
    const FlowConservationResult result = upper_bound_outage(scenario);

    for (std::size_t u = 0; u < scenario.relays.size(); ++u) {
        const RelayConfig& r = scenario.relays[u];
        const double p_fail = decode_failure_prob(r.sr, scenario.radio);
        const double p = result.p_eh[u];
        const double mean_harvest =
            0.5 * scenario.radio.eta * scenario.radio.source_power * r.sr.lambda;
        const double mean_spend =
            scenario.spec.alpha() + (1.0 - p_fail) * r.policy.beta(scenario.spec);
        CHECK(p * mean_harvest == doctest::Approx((1.0 - p) * mean_spend).epsilon(1e-12));
        CHECK(result.q[u] == doctest::Approx((1.0 - p) * (1.0 - p_fail)).epsilon(1e-12));
        CHECK(result.q[u] <= 1.0 - p_fail);
        CHECK(result.q[u] > 0.0);
    }
}

TEST_CASE("upper bound expansion is the independent Bernoulli mixture") {
    const NetworkScenario scenario = homogeneous(2, 1.0, 7.9e-6, 1.2e-7, 3e-6);
    const FlowConservationResult result = upper_bound_outage(scenario);
    const double q0 = result.q[0];
    const double q1 = result.q[1];

    CHECK(result.report.p_empty == doctest::Approx((1.0 - q0) * (1.0 - q1)).epsilon(1e-14));
    REQUIRE(result.report.per_subset.size() == 3);
    CHECK(result.report.per_subset[0].probability ==
          doctest::Approx(q0 * (1.0 - q1)).epsilon(1e-14));
    CHECK(result.report.per_subset[1].probability ==
          doctest::Approx((1.0 - q0) * q1).epsilon(1e-14));
    CHECK(result.report.per_subset[2].probability == doctest::Approx(q0 * q1).epsilon(1e-14));
    CHECK(result.report.probability_total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("iid bound equals the general bound on homogeneous input") {
    const NetworkScenario scenario = homogeneous(4, 1.5, 7.9e-6, 1.2e-7, 3e-6);
    const FlowConservationResult general = upper_bound_outage(scenario);
    const FlowConservationResult iid = upper_bound_outage_iid(
        4, scenario.relays[0], scenario.radio, scenario.spec);
    CHECK(std::abs(general.p_out_ub - iid.p_out_ub) <= 1e-12);
    CHECK(general.q[0] == iid.q[0]);

    // N = 1 two-term binomial
    const FlowConservationResult one =
        upper_bound_outage_iid(1, scenario.relays[0], scenario.radio, scenario.spec);
    const double beta_sigma2 = scenario.relays[0].policy.beta(scenario.spec) *
                               scenario.relays[0].rd.sigma * scenario.relays[0].rd.sigma;
    const double a = scenario.radio.noise_power / (4.0 * beta_sigma2);
    const double expected =
        (1.0 - one.q[0]) +
        one.q[0] * (1.0 - std::exp(-a * scenario.radio.snr_threshold));
    CHECK(one.p_out_ub == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("bound sits below the finite-capacity outage") {
    const NetworkScenario scenario = homogeneous(3, 1.0, 7.9e-6, 1.2e-7, 4e-6);
    const double finite = system_outage(scenario, solve_stationaries(scenario)).p_out;
    const double bound = upper_bound_outage(scenario).p_out_ub;
    CHECK(bound <= finite);
}
