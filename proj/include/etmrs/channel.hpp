#pragma once

#include <cstddef>
#include <vector>

#include "etmrs/rng.hpp"

namespace etmrs {

/// First-hop channel: Nakagami-m fading, parameterized by the power-gain
/// distribution (gamma with shape m and mean lambda).
struct NakagamiLink {
    double m;       // fading severity, m >= 0.5
    double lambda;  // average channel power gain
    double b;       // rate parameter, b = m / lambda

    NakagamiLink(double m_, double lambda_);
};

/// Second-hop channel: Rayleigh fading with average power gain lambda.
struct RayleighLink {
    double lambda;  // average channel power gain, E[|g|^2]
    double sigma;   // amplitude scale, sigma = sqrt(lambda / 2)

    explicit RayleighLink(double lambda_);
};

/// Source power, noise floor, transmission rate and energy conversion.
struct RadioParams {
    double source_power;   // P, watts
    double noise_power;    // N0, watts
    double rate;           // kappa, bits/s/Hz
    double eta;            // energy conversion efficiency, in (0, 1)
    double snr_threshold;  // v = 2^(2 kappa) - 1

    RadioParams(double source_power_, double noise_power_, double rate_, double eta_);
};

/// Linear deployment: relays on the source-destination segment.
struct Topology {
    double d_sd;               // source-destination distance, meters
    std::vector<double> d_sr;  // source-relay distances, meters
    double omega;              // path-loss exponent, in [2, 5]

    Topology(double d_sd_, std::vector<double> d_sr_, double omega_);

    double d_rd(std::size_t u) const { return d_sd - d_sr[u]; }
    std::size_t relay_count() const { return d_sr.size(); }
};

/// CDF of the Nakagami-m channel power gain at x >= 0.
double nakagami_cdf(const NakagamiLink& link, double x);

/// Upper tail Pr{H > x}, precise down to ~1e-300; the battery chain needs
/// harvest-jump probabilities far below the resolution of 1 - CDF.
double nakagami_tail(const NakagamiLink& link, double x);

/// PDF of the Nakagami-m channel power gain, b^m x^(m-1) e^(-bx) / Gamma(m).
double nakagami_pdf(const NakagamiLink& link, double x);

/// Average channel power gain at distance d: 1e-3 / (1 + d^omega).
double path_loss_gain(double d, double omega);

/// Probability that a relay behind `link` fails to decode the source block,
/// i.e. (1/2) log2(1 + P H / N0) < kappa.
double decode_failure_prob(const NakagamiLink& link, const RadioParams& radio);

/// One draw of the Rayleigh amplitude |g|, with E[|g|^2] = lambda.
double rayleigh_amplitude_sample(const RayleighLink& link, Rng& rng);

/// One draw of the Nakagami-m channel power gain H.
double nakagami_power_sample(const NakagamiLink& link, Rng& rng);

}  // namespace etmrs
