#pragma once

#include "shotnoise/analysis.hpp"
#include "shotnoise/spectra.hpp"
#include "shotnoise/transport.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shotnoise {

enum class NoiseMode { none, poisson };

NoiseMode parse_noise_mode(const std::string& name);
std::string to_string(NoiseMode mode);

/// Parameters of a synthetic tip approach. Defaults describe a 60-step
/// approach at 1.6 V from 1e-3 G0 through a 0.93 G0 single-atom contact.
struct SynthConfig {
    double voltage = 1.6;        // V
    double temperature = 2000.0; // K, electron temperature
    DecompositionModel model = DecompositionModel::two_channel();
    double z0 = 0.0;                // nm, start of the approach
    double z1 = 0.4;                // nm, end of the approach
    std::size_t n_steps = 60;
    double tunneling_decay = 0.045; // nm, e-folding length of g in tunneling
    double contact_g = 0.93;        // G0 at the jump to contact
    double start_g = 1e-3;          // G0 at z0
    double bin_width = 0.01;        // eV
    double energy_lo = 1.0;         // eV, first bin center
    double energy_hi = 2.2;         // eV, last bin center
    double base_rate = 1e12;        // counts/s per A at unit normalized yield
    NoiseMode noise_mode = NoiseMode::none;
    std::uint64_t seed = 0;

    void validate() const;

    /// Displacement at which g reaches contact_g.
    double contact_z() const;
};

struct TraceSample {
    double z; // nm
    double g; // G0
};

/// g(z): exponential growth contact_g * exp((z - z_c)/decay) up to the contact
/// point z_c, then linear growth reaching the model capacity at z1.
double synth_conductance(const SynthConfig& config, double z);

/// n_steps samples of g(z) on a uniform displacement grid over [z0, z1].
std::vector<TraceSample> synth_trace(const SynthConfig& config);

/// Fraction of the 1e level carried by the 2e band at conductance g.
double two_electron_fraction(double g);

/// Synthetic luminescence map. Each spectrum is flat across the 1e band at
/// base_rate * I * normalized_yield_model(g) / band width, carries a 2e
/// shoulder of two_electron_fraction(g) times that level across the 2e band,
/// and is zero elsewhere. Poisson mode draws bin counts for a 1 s exposure.
/// All stored values are rounded to the CSV output precision.
SpectralMap synth_map(const SynthConfig& config);

/// Multiplies every 1e yield (and intensity) by 1 + relative_sigma * N(0, 1).
YieldCurve perturb_yields(YieldCurve curve, double relative_sigma, std::uint64_t seed);

} // namespace shotnoise
