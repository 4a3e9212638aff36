#include "etmrs/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "etmrs/math_special.hpp"

namespace etmrs {

NakagamiLink::NakagamiLink(double m_, double lambda_) : m(m_), lambda(lambda_), b(m_ / lambda_) {
    if (!(m >= 0.5)) throw std::invalid_argument("NakagamiLink: shape m must be >= 0.5");
    if (!(lambda > 0.0)) throw std::invalid_argument("NakagamiLink: lambda must be positive");
}

RayleighLink::RayleighLink(double lambda_) : lambda(lambda_), sigma(std::sqrt(lambda_ / 2.0)) {
    if (!(lambda > 0.0)) throw std::invalid_argument("RayleighLink: lambda must be positive");
}

RadioParams::RadioParams(double source_power_, double noise_power_, double rate_, double eta_)
    : source_power(source_power_),
      noise_power(noise_power_),
      rate(rate_),
      eta(eta_),
      snr_threshold(std::exp2(2.0 * rate_) - 1.0) {
    if (!(source_power > 0.0)) throw std::invalid_argument("RadioParams: P must be positive");
    if (!(noise_power > 0.0)) throw std::invalid_argument("RadioParams: N0 must be positive");
    if (!(rate > 0.0)) throw std::invalid_argument("RadioParams: kappa must be positive");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("RadioParams: eta must be in (0,1)");
}

Topology::Topology(double d_sd_, std::vector<double> d_sr_, double omega_)
    : d_sd(d_sd_), d_sr(std::move(d_sr_)), omega(omega_) {
    if (!(d_sd > 0.0)) throw std::invalid_argument("Topology: d_sd must be positive");
    if (!(omega >= 2.0 && omega <= 5.0))
        throw std::invalid_argument("Topology: omega must be in [2,5]");
    for (double d : d_sr) {
        if (!(d > 0.0 && d < d_sd))
            throw std::invalid_argument("Topology: relay distances must satisfy 0 < d_sr < d_sd");
    }
}

double nakagami_cdf(const NakagamiLink& link, double x) {
    if (x <= 0.0) return 0.0;
    return regularized_lower_gamma(link.m, link.b * x);
}

double nakagami_tail(const NakagamiLink& link, double x) {
    if (x <= 0.0) return 1.0;
    return regularized_upper_gamma(link.m, link.b * x);
}

double nakagami_pdf(const NakagamiLink& link, double x) {
    if (x <= 0.0) return 0.0;
    const double log_pdf =
        link.m * std::log(link.b) + (link.m - 1.0) * std::log(x) - link.b * x - std::lgamma(link.m);
    return std::exp(log_pdf);
}

double path_loss_gain(double d, double omega) {
    return 1.0e-3 / (1.0 + std::pow(d, omega));
}

double decode_failure_prob(const NakagamiLink& link, const RadioParams& radio) {
    return nakagami_cdf(link, radio.snr_threshold * radio.noise_power / radio.source_power);
}

double rayleigh_amplitude_sample(const RayleighLink& link, Rng& rng) {
    // |g|^2 is exponential with mean lambda; invert the uniform directly.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = 1.0 - unit(rng);  // in (0, 1]
    return std::sqrt(-link.lambda * std::log(u));
}

double nakagami_power_sample(const NakagamiLink& link, Rng& rng) {
    std::gamma_distribution<double> gamma(link.m, link.lambda / link.m);
    return gamma(rng);
}

}  // namespace etmrs
