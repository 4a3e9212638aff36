#include "etmrs/battery.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "etmrs/errors.hpp"

namespace etmrs {
namespace {

// Snaps values that are within 1e-9 (relative) of an integer before applying
// floor/ceil, so lattice-multiple inputs survive the C/L round trip.
double snap_to_integer(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
    return x;
}

}  // namespace

BatterySpec::BatterySpec(double capacity, int levels, double alpha_raw)
    : capacity_(capacity), levels_(levels), alpha_raw_(alpha_raw) {
    if (!(capacity_ > 0.0)) throw std::invalid_argument("BatterySpec: capacity must be positive");
    if (levels_ < 1) throw std::invalid_argument("BatterySpec: level count must be >= 1");
    if (alpha_raw_ < 0.0) throw std::invalid_argument("BatterySpec: alpha must be nonnegative");
    alpha_index_ = discretize_alpha(alpha_raw_, *this);
    if (alpha_index_ >= levels_)
        throw AlphaExceedsCapacity(
            "BatterySpec: discretized alpha reaches the top level; a fully charged battery "
            "cannot cover the circuit cost plus any forwarding energy");
}

RelayEnergyPolicy RelayEnergyPolicy::from_beta_index(const BatterySpec& spec, int beta_index) {
    if (beta_index < 1 || beta_index > spec.levels() - spec.alpha_index())
        throw std::invalid_argument("RelayEnergyPolicy: beta index must be in [1, L - alpha]");
    return RelayEnergyPolicy{beta_index, spec.alpha_index() + beta_index};
}

RelayEnergyPolicy RelayEnergyPolicy::from_threshold(const BatterySpec& spec, double chi_raw) {
    if (!(chi_raw > 0.0)) throw ConfigError("threshold chi must be positive");
    const double scaled = snap_to_integer(chi_raw * spec.levels() / spec.capacity());
    if (scaled > spec.levels())
        throw ConfigError("threshold chi = " + std::to_string(chi_raw) +
                          " J exceeds battery capacity");
    int chi_index = static_cast<int>(std::ceil(scaled));
    if (chi_index < spec.alpha_index() + 1) chi_index = spec.alpha_index() + 1;
    return RelayEnergyPolicy{chi_index - spec.alpha_index(), chi_index};
}

TransitionMatrix::TransitionMatrix(int levels, int alpha_index, int chi_index)
    : levels_(levels),
      alpha_index_(alpha_index),
      chi_index_(chi_index),
      entries_(static_cast<std::size_t>(levels + 1) * (levels + 1), 0.0) {}

double TransitionMatrix::row_sum(int i) const {
    const double* row = entries_.data() + static_cast<std::size_t>(i) * size();
    return std::accumulate(row, row + size(), 0.0);
}

double StationaryDistribution::sum() const {
    return std::accumulate(pi.begin(), pi.end(), 0.0);
}

int discretize_harvest(double e_raw, const BatterySpec& spec) {
    if (e_raw <= 0.0) return 0;
    const double scaled = snap_to_integer(e_raw * spec.levels() / spec.capacity());
    const int j = static_cast<int>(std::floor(scaled));
    return j > spec.levels() ? spec.levels() : j;
}

int discretize_alpha(double alpha_raw, const BatterySpec& spec) {
    if (alpha_raw <= 0.0) return 0;
    const double scaled = snap_to_integer(alpha_raw * spec.levels() / spec.capacity());
    if (scaled > spec.levels())
        throw AlphaExceedsCapacity("circuit cost alpha = " + std::to_string(alpha_raw) +
                                   " J exceeds battery capacity");
    return static_cast<int>(std::ceil(scaled));
}

TransitionMatrix build_transition_matrix(const NakagamiLink& link, const RadioParams& radio,
                                         const BatterySpec& spec,
                                         const RelayEnergyPolicy& policy) {
    const int levels = spec.levels();
    if (policy.chi_index != spec.alpha_index() + policy.beta_index || policy.beta_index < 1 ||
        policy.chi_index > levels)
        throw std::invalid_argument("build_transition_matrix: policy inconsistent with the battery lattice");

    TransitionMatrix z(levels, spec.alpha_index(), policy.chi_index);

    // H threshold for gaining exactly d levels: harvested energy (1/2)*eta*P*H
    // reaches epsilon_d at H = 2*d*C / (eta*P*L).
    const double h_per_level = 2.0 * spec.capacity() / (radio.eta * radio.source_power * levels);
    const double p_fail = decode_failure_prob(link, radio);

    for (int i = 0; i < policy.chi_index; ++i) {
        // EH row: never discharges; increments follow the discretized harvest.
        // Built from upper-tail differences so that jump probabilities far
        // below 1 ulp of the CDF survive (they decide reachability).
        double tail_lo = 1.0;
        for (int j = i; j < levels; ++j) {
            const double tail_hi = nakagami_tail(link, h_per_level * (j - i + 1));
            z(i, j) = std::max(0.0, tail_lo - tail_hi);
            tail_lo = tail_hi;
        }
        z(i, levels) = tail_lo;  // battery tops up
    }
    for (int i = policy.chi_index; i <= levels; ++i) {
        // IF row: decode failure costs alpha, success costs the full threshold.
        z(i, i - spec.alpha_index()) += p_fail;
        z(i, i - policy.chi_index) += 1.0 - p_fail;
    }
    return z;
}

StationaryDistribution stationary_distribution(const TransitionMatrix& z) {
    // Grassmann-Taksar-Heyman state reduction. Subtraction-free, so the
    // result is nonnegative by construction and accurate componentwise even
    // for chains whose stationary mass spans hundreds of orders of magnitude
    // (starved relays, unreachable upper levels).
    const std::size_t n = z.size();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = z(static_cast<int>(i), static_cast<int>(j));

    for (std::size_t k = n - 1; k >= 1; --k) {
        double* row_k = a.data() + k * n;
        double exit_mass = 0.0;
        for (std::size_t j = 0; j < k; ++j) exit_mass += row_k[j];
        if (!(exit_mass > 0.0))
            throw SingularSystem(
                "stationary_distribution: state " + std::to_string(k) +
                " cannot reach lower levels; the chain is not irreducible");
        for (std::size_t i = 0; i < k; ++i) {
            double* row_i = a.data() + i * n;
            const double fold = row_i[k] / exit_mass;
            row_i[k] = fold;
            if (fold != 0.0)
                for (std::size_t j = 0; j < k; ++j) row_i[j] += fold * row_k[j];
        }
    }

    StationaryDistribution out;
    out.pi.assign(n, 0.0);
    out.pi[0] = 1.0;
    double total = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        double mass = 0.0;
        for (std::size_t i = 0; i < k; ++i) mass += out.pi[i] * a[i * n + k];
        out.pi[k] = mass;
        total += mass;
    }
    for (double& p : out.pi) p /= total;

    // Residual of the balance equations is the solve's own certificate.
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = -out.pi[i];
        for (std::size_t j = 0; j < n; ++j) acc += z(static_cast<int>(j), static_cast<int>(i)) * out.pi[j];
        residual = std::max(residual, std::abs(acc));
    }
    if (!std::isfinite(residual) || residual > 1e-10)
        throw SingularSystem("stationary_distribution: balance residual " +
                             std::to_string(residual) + " exceeds certificate");
    return out;
}

ModeProbabilities mode_probabilities(const StationaryDistribution& pi,
                                     const RelayEnergyPolicy& policy) {
    double if_mass = 0.0;
    for (std::size_t i = policy.chi_index; i < pi.pi.size(); ++i) if_mass += pi.pi[i];
    // Levels partition exactly at the threshold index; derive the EH side so
    // the two masses always sum to one.
    return ModeProbabilities{1.0 - if_mass, if_mass};
}

}  // namespace etmrs
