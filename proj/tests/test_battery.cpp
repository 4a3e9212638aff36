#include <doctest.h>

#include <cmath>

#include "etmrs/battery.hpp"
#include "etmrs/errors.hpp"

using namespace etmrs;

TEST_CASE("battery spec and level lattice") {
    const BatterySpec spec(2e-5, 200, 1e-7);
    CHECK(spec.step() == doctest::Approx(1e-7).epsilon(1e-15));
    CHECK(spec.alpha_index() == 1);
    CHECK(spec.level_energy(200) == doctest::Approx(2e-5).epsilon(1e-15));
    // strictly increasing levels
    for (int i = 1; i <= spec.levels(); ++i)
        CHECK(spec.level_energy(i) > spec.level_energy(i - 1));

    CHECK_THROWS_AS(BatterySpec(2e-5, 200, 3e-5), AlphaExceedsCapacity);
    CHECK_THROWS_AS(BatterySpec(2e-5, 1, 1e-7), AlphaExceedsCapacity);  // alpha fills the only level
    CHECK_NOTHROW(BatterySpec(2e-5, 200, 0.0));
}

TEST_CASE("harvest discretization follows the floor rule") {
    const BatterySpec spec(10.0, 10, 0.0);
    CHECK(discretize_harvest(3.7 * spec.step(), spec) == 3);
    CHECK(discretize_harvest(0.0, spec) == 0);
    CHECK(discretize_harvest(2.0 * spec.capacity(), spec) == 10);  // battery-full cap
    CHECK(discretize_harvest(2.0 * spec.step(), spec) == 2);       // exact multiple stays put
    CHECK(discretize_harvest(0.999 * spec.step(), spec) == 0);
}

TEST_CASE("alpha discretization follows the ceiling rule") {
    const BatterySpec spec(10.0, 10, 0.0);
    CHECK(discretize_alpha(2.2 * spec.step(), spec) == 3);
    CHECK(discretize_alpha(0.0, spec) == 0);
    CHECK(discretize_alpha(3.0 * spec.step(), spec) == 3);
    CHECK_THROWS_AS(discretize_alpha(1.5 * spec.capacity(), spec), AlphaExceedsCapacity);
}

TEST_CASE("policy construction keeps the threshold on the lattice") {
    const BatterySpec spec(2e-5, 200, 1e-7);
    const RelayEnergyPolicy p = RelayEnergyPolicy::from_beta_index(spec, 29);
    CHECK(p.chi_index == 30);
    CHECK(p.chi(spec) == doctest::Approx(3e-6).epsilon(1e-12));
    CHECK_THROWS(RelayEnergyPolicy::from_beta_index(spec, 0));
    CHECK_THROWS(RelayEnergyPolicy::from_beta_index(spec, 200));  // only L - alpha levels free

    const RelayEnergyPolicy q = RelayEnergyPolicy::from_threshold(spec, 3e-6);
    CHECK(q.chi_index == 30);
    CHECK(q.beta_index == 29);
    // off-lattice thresholds snap up
    const BatterySpec coarse(2e-5, 10, 1e-7);
    const RelayEnergyPolicy r = RelayEnergyPolicy::from_threshold(coarse, 3e-6);
    CHECK(r.chi_index == 2);
    CHECK_THROWS_AS(RelayEnergyPolicy::from_threshold(spec, 3e-5), ConfigError);
}

TEST_CASE("transition matrix structure and row sums") {
    const NakagamiLink link(2.0, 7.9e-6);
    const RadioParams radio(1.0, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2e-5, 50, 1e-7);
    const RelayEnergyPolicy policy = RelayEnergyPolicy::from_threshold(spec, 4e-6);
    const TransitionMatrix z = build_transition_matrix(link, radio, spec, policy);

    for (int i = 0; i <= spec.levels(); ++i)
        CHECK(z.row_sum(i) == doctest::Approx(1.0).epsilon(1e-12));

    // EH rows never discharge, IF rows have exactly the two decode branches.
    for (int i = 0; i < policy.chi_index; ++i)
        for (int j = 0; j < i; ++j) CHECK(z(i, j) == 0.0);
    for (int i = policy.chi_index; i <= spec.levels(); ++i) {
        int nonzero = 0;
        for (int j = 0; j <= spec.levels(); ++j)
            if (z(i, j) != 0.0) ++nonzero;
        CHECK(nonzero <= 2);
        CHECK(z(i, i - spec.alpha_index()) + z(i, i - policy.chi_index) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    // EH entries are the harvest-increment CDF differences; the top column
    // collects the full tail.
    const double h_step = 2.0 * spec.capacity() / (radio.eta * radio.source_power * spec.levels());
    for (int i : {0, 3, policy.chi_index - 1}) {
        for (int j = i; j < spec.levels(); ++j) {
            const double expected = nakagami_cdf(link, h_step * (j - i + 1)) -
                                    nakagami_cdf(link, h_step * (j - i));
            CHECK(z(i, j) == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(z(i, spec.levels()) ==
              doctest::Approx(1.0 - nakagami_cdf(link, h_step * (spec.levels() - i)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("tiny chain hand example") {
    // L=2, alpha=0, chi=beta=eps1; row 0 holds the CDF differences of gaining
    // 0, 1 or 2+ levels.
    const NakagamiLink link(1.0, 1.0);
    const RadioParams radio(1.0, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2.0, 2, 0.0);
    const RelayEnergyPolicy policy = RelayEnergyPolicy::from_beta_index(spec, 1);
    const TransitionMatrix z = build_transition_matrix(link, radio, spec, policy);

    const double h1 = 2.0 * 1.0 * spec.capacity() / (radio.eta * radio.source_power * 2);
    const double f1 = nakagami_cdf(link, h1);
    const double f2 = nakagami_cdf(link, 2.0 * h1);
    CHECK(z(0, 0) == doctest::Approx(f1));
    CHECK(z(0, 1) == doctest::Approx(f2 - f1));
    CHECK(z(0, 2) == doctest::Approx(1.0 - f2));
    // IF rows: decode failure keeps the level (alpha = 0), success drops chi.
    const double p_fail = decode_failure_prob(link, radio);
    CHECK(z(1, 1) == doctest::Approx(p_fail));
    CHECK(z(1, 0) == doctest::Approx(1.0 - p_fail));
}

TEST_CASE("stationary distribution: two-state hand solution") {
    TransitionMatrix z(1, 0, 1);
    z(0, 0) = 0.5;
    z(0, 1) = 0.5;
    z(1, 0) = 1.0;
    z(1, 1) = 0.0;
    const StationaryDistribution pi = stationary_distribution(z);
    CHECK(pi.pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(pi.pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("stationary distribution: doubly stochastic gives uniform") {
    TransitionMatrix z(2, 0, 1);
    const double entries[3][3] = {{0.2, 0.3, 0.5}, {0.5, 0.2, 0.3}, {0.3, 0.5, 0.2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) z(i, j) = entries[i][j];
    const StationaryDistribution pi = stationary_distribution(z);
    for (int i = 0; i < 3; ++i) CHECK(pi.pi[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("stationary distribution certificate on a realistic chain") {
    const NakagamiLink link(2.0, 7.9e-6);
    const RadioParams radio(2.0, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2e-5, 50, 1e-7);
    const RelayEnergyPolicy policy = RelayEnergyPolicy::from_threshold(spec, 4e-6);
    const TransitionMatrix z = build_transition_matrix(link, radio, spec, policy);
    const StationaryDistribution pi = stationary_distribution(z);

    CHECK(std::abs(pi.sum() - 1.0) <= 1e-12);
    double residual = 0.0;
    for (int i = 0; i <= spec.levels(); ++i) {
        double acc = -pi.pi[i];
        for (int j = 0; j <= spec.levels(); ++j) acc += z(j, i) * pi.pi[j];
        residual = std::max(residual, std::abs(acc));
    }
    CHECK(residual <= 1e-10);
    for (double p : pi.pi) CHECK(p >= 0.0);
}

TEST_CASE("mode probabilities partition at the threshold index") {
    StationaryDistribution uniform;
    const int levels = 9;  // L = 9, ten levels
    uniform.pi.assign(levels + 1, 1.0 / (levels + 1));

    const ModeProbabilities low = mode_probabilities(uniform, RelayEnergyPolicy{1, 1});
    CHECK(low.if_mode == doctest::Approx(levels / double(levels + 1)).epsilon(1e-12));
    const ModeProbabilities high = mode_probabilities(uniform, RelayEnergyPolicy{9, 9});
    CHECK(high.if_mode == doctest::Approx(1.0 / (levels + 1)).epsilon(1e-12));
    CHECK(low.eh + low.if_mode == 1.0);
    CHECK(high.eh + high.if_mode == 1.0);
}

TEST_CASE("raising the threshold never increases the IF probability") {
    const NakagamiLink link(2.0, 7.9e-6);
    const RadioParams radio(1.0, 1e-12, 1.0, 0.5);
    const BatterySpec spec(2e-5, 40, 1e-7);
    double prev = 1.0;
    for (int beta = 1; beta <= spec.levels() - spec.alpha_index(); ++beta) {
        const RelayEnergyPolicy policy = RelayEnergyPolicy::from_beta_index(spec, beta);
        const TransitionMatrix z = build_transition_matrix(link, radio, spec, policy);
        const ModeProbabilities mode = mode_probabilities(stationary_distribution(z), policy);
        CHECK(mode.if_mode <= prev + 1e-12);
        prev = mode.if_mode;
    }
}
