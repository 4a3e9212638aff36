#pragma once

#include <vector>

#include "etmrs/channel.hpp"

namespace etmrs {

/// Discrete battery: L+1 levels epsilon_i = i*C/L for i in 0..L, shared by
/// all relays, plus the discretized circuit/decoding cost alpha.
class BatterySpec {
public:
    /// Throws AlphaExceedsCapacity when alpha_raw > C or when the discretized
    /// alpha reaches the top level (no forwarding energy representable).
    BatterySpec(double capacity, int levels, double alpha_raw);

    double capacity() const { return capacity_; }
    int levels() const { return levels_; }
    double alpha_raw() const { return alpha_raw_; }
    int alpha_index() const { return alpha_index_; }

    double level_energy(int i) const { return static_cast<double>(i) * capacity_ / levels_; }
    double step() const { return capacity_ / levels_; }  // epsilon_1
    double alpha() const { return level_energy(alpha_index_); }

private:
    double capacity_;
    int levels_;
    double alpha_raw_;
    int alpha_index_;
};

/// Forwarding energy and threshold of one relay, kept as integer level
/// indices; joule values are always derived from the battery lattice.
struct RelayEnergyPolicy {
    int beta_index;  // forwarding energy level, in [1, L - alpha_index]
    int chi_index;   // threshold level, alpha_index + beta_index

    static RelayEnergyPolicy from_beta_index(const BatterySpec& spec, int beta_index);
    /// Snaps a raw threshold (joules) up to the energy lattice:
    /// chi_index = ceil(chi_raw / epsilon_1), clamped to [alpha_index+1, L].
    /// Throws ConfigError when chi_raw exceeds capacity or leaves no room
    /// for forwarding energy.
    static RelayEnergyPolicy from_threshold(const BatterySpec& spec, double chi_raw);

    double beta(const BatterySpec& spec) const { return spec.level_energy(beta_index); }
    double chi(const BatterySpec& spec) const { return spec.level_energy(chi_index); }
};

/// Row-stochastic battery chain of one relay over levels 0..L.
class TransitionMatrix {
public:
    TransitionMatrix(int levels, int alpha_index, int chi_index);

    int levels() const { return levels_; }
    int size() const { return levels_ + 1; }
    int alpha_index() const { return alpha_index_; }
    int chi_index() const { return chi_index_; }

    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * size() + j]; }
    double& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * size() + j]; }

    double row_sum(int i) const;

private:
    int levels_;
    int alpha_index_;
    int chi_index_;
    std::vector<double> entries_;
};

struct StationaryDistribution {
    std::vector<double> pi;  // occupancy probabilities over levels 0..L

    double sum() const;
};

struct ModeProbabilities {
    double eh;        // long-run probability of operating in EH mode
    double if_mode;   // long-run probability of operating in IF mode
};

/// Largest level not exceeding the raw harvested energy (floor rule),
/// clamped to [0, L].
int discretize_harvest(double e_raw, const BatterySpec& spec);

/// Smallest level covering the raw circuit cost (ceiling rule).
/// Throws AlphaExceedsCapacity when alpha_raw > C.
int discretize_alpha(double alpha_raw, const BatterySpec& spec);

/// Battery chain of one relay under its threshold policy: EH rows hold the
/// harvest-increment distribution, IF rows the two decode branches.
TransitionMatrix build_transition_matrix(const NakagamiLink& link, const RadioParams& radio,
                                         const BatterySpec& spec, const RelayEnergyPolicy& policy);

/// Unique stationary distribution of a row-stochastic irreducible chain,
/// solved directly from (Z^T - I + B) pi = b. Throws SingularSystem when the
/// linear system cannot be solved to the residual certificate.
StationaryDistribution stationary_distribution(const TransitionMatrix& z);

/// Splits stationary mass at the threshold index: levels >= chi_index are IF.
ModeProbabilities mode_probabilities(const StationaryDistribution& pi,
                                     const RelayEnergyPolicy& policy);

}  // namespace etmrs
