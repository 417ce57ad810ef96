#pragma once

#include "shotnoise/transport.hpp"

#include <cstdint>

namespace shotnoise {

struct NoiseEnvironment {
    double voltage = 0.0;     // V; only |V| enters the formulas
    double temperature = 0.0; // K, electron temperature

    void validate() const;
};

/// Current spectral density in A^2/Hz.
struct NoiseDensity {
    double value = 0.0;
};

/// Full (Poissonian) shot noise 2e|I|.
NoiseDensity schottky(double current);

/// Partition-reduced shot noise F * 2e|I|.
NoiseDensity shot_noise(const ChannelSet& channels, double current);

/// Finite-temperature noise of a multichannel contact:
///
///   P = 2e|V| G0 coth(e|V| / 2kT) sum T(1-T) + 4kT G0 sum T^2
///
/// The T = 0 and V = 0 limits are taken analytically, so the expression is
/// finite everywhere (it is 0 at V = T = 0).
NoiseDensity thermal_noise(const ChannelSet& channels, const NoiseEnvironment& env);

/// thermal_noise divided by its low-conductance limit for the same total
/// transmission, i.e. by 2e|V| coth(e|V|/2kT) G0 g. Tends to 1 as g -> 0 and
/// equals fano(channels) at T = 0.
double normalized_yield(const ChannelSet& channels, const NoiseEnvironment& env);

/// normalized_yield(decompose(g, model), env).
double normalized_yield_model(double g, const DecompositionModel& model, const NoiseEnvironment& env);

/// coth(x) for x >= 0, exactly 1 above x = 20.
double coth(double x);

/// x * coth(x), continuous through x = 0 where it equals 1.
double x_coth_x(double x);

struct MonteCarloFano {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Number of batches mc_fano splits its attempts into.
inline constexpr std::size_t mc_batches = 100;

/// Binomial partition estimate of the Fano factor. Each attempt lets every
/// channel transmit independently with probability T_i; the estimate is the
/// unbiased variance over the mean of the per-attempt transmitted count.
/// Attempts are split into `mc_batches` batches, batch b seeded with
/// seed + b, so the result does not depend on `workers`. The standard error
/// comes from the spread of the per-batch estimates. `workers` = 0 picks the
/// hardware concurrency.
MonteCarloFano mc_fano(const ChannelSet& channels, std::uint64_t attempts, std::uint64_t seed,
                       unsigned workers = 0);

} // namespace shotnoise
