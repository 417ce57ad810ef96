#include "shotnoise/synth.hpp"

#include "shotnoise/constants.hpp"
#include "shotnoise/errors.hpp"
#include "shotnoise/format.hpp"
#include "shotnoise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace shotnoise {

NoiseMode parse_noise_mode(const std::string& name) {
    if (name == "none")
        return NoiseMode::none;
    if (name == "poisson")
        return NoiseMode::poisson;
    throw ValidationError("unknown noise mode \"" + name + "\" (expected none or poisson)");
}

std::string to_string(NoiseMode mode) {
    return mode == NoiseMode::poisson ? "poisson" : "none";
}

void SynthConfig::validate() const {
    if (!(voltage > 0.0) || !std::isfinite(voltage))
        throw ValidationError("synth: voltage must be positive");
    NoiseEnvironment{voltage, temperature}.validate();
    if (n_steps < 2)
        throw ValidationError("synth: n_steps must be >= 2");
    if (!(z0 < z1) || !std::isfinite(z0) || !std::isfinite(z1))
        throw ValidationError("synth: z range needs z0 < z1");
    if (!(tunneling_decay > 0.0))
        throw ValidationError("synth: tunneling decay must be positive");
    if (!(contact_g > 0.0) || contact_g > model.capacity() + capacity_tolerance)
        throw ValidationError("synth: contact_g must lie in (0, model capacity]");
    if (!(start_g > 0.0) || start_g > contact_g)
        throw ValidationError("synth: start_g must lie in (0, contact_g]");
    if (!(contact_z() < z1))
        throw ValidationError("synth: contact point falls beyond z1; widen the z range");
    if (!(bin_width > 0.0))
        throw ValidationError("synth: bin width must be positive");
    if (!(energy_lo > 0.0 && energy_lo < energy_hi))
        throw ValidationError("synth: energy range needs 0 < lo < hi");
    if (!(base_rate > 0.0) || !std::isfinite(base_rate))
        throw ValidationError("synth: base rate must be positive");
}

double SynthConfig::contact_z() const {
    return z0 + tunneling_decay * std::log(contact_g / start_g);
}

double synth_conductance(const SynthConfig& config, double z) {
    const double zc = config.contact_z();
    if (z <= zc)
        return config.contact_g * std::exp((z - zc) / config.tunneling_decay);
    const double capacity = config.model.capacity();
    return config.contact_g + (capacity - config.contact_g) * (z - zc) / (config.z1 - zc);
}

std::vector<TraceSample> synth_trace(const SynthConfig& config) {
    config.validate();
    std::vector<TraceSample> out;
    out.reserve(config.n_steps);
    const double last = static_cast<double>(config.n_steps - 1);
    for (std::size_t i = 0; i < config.n_steps; ++i) {
        double z = i + 1 == config.n_steps ? config.z1
                                           : config.z0 + (config.z1 - config.z0) * static_cast<double>(i) / last;
        double g = i + 1 == config.n_steps ? config.model.capacity() : synth_conductance(config, z);
        out.push_back({z, g});
    }
    return out;
}

double two_electron_fraction(double g) {
    return 0.1 * std::min(g, 0.25) / 0.25;
}

namespace {

double round_conductance(double g, double capacity) {
    double r = round_to_output(g);
    if (r > capacity + capacity_tolerance)
        r = round_to_output(g * (1.0 - 1e-8));
    return r;
}

} // namespace

SpectralMap synth_map(const SynthConfig& config) {
    config.validate();
    const auto bands = default_bands(config.voltage);
    const NoiseEnvironment env{config.voltage, config.temperature};

    const auto n_bins =
        static_cast<std::size_t>(std::llround((config.energy_hi - config.energy_lo) / config.bin_width)) + 1;
    if (n_bins < 2)
        throw ValidationError("synth: energy range holds fewer than 2 bins");
    std::vector<double> energies(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k)
        energies[k] = round_to_output(config.energy_lo + config.bin_width * static_cast<double>(k));

    std::vector<char> in_1e(n_bins), in_2e(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        in_1e[k] = bands.one_electron.contains(energies[k]);
        in_2e[k] = bands.two_electron.contains(energies[k]);
    }
    if (std::find(in_1e.begin(), in_1e.end(), 1) == in_1e.end() ||
        std::find(in_2e.begin(), in_2e.end(), 1) == in_2e.end())
        throw ValidationError("synth: energy range must cover the 1e and 2e bands");

    std::mt19937_64 rng(config.seed);
    const double grid_width = energies[1] - energies[0];

    std::vector<MapRecord> records;
    records.reserve(config.n_steps);
    std::int64_t step = 0;
    for (const auto& sample : synth_trace(config)) {
        MapRecord r;
        r.step = step++;
        r.displacement = round_to_output(sample.z);
        r.conductance = round_conductance(sample.g, config.model.capacity());

        const double current = r.conductance * constants::G0 * config.voltage;
        const double level_1e = config.base_rate * current *
                                normalized_yield_model(r.conductance, config.model, env) /
                                bands.one_electron.width();
        const double level_2e = two_electron_fraction(r.conductance) * level_1e;

        r.intensities.assign(n_bins, 0.0);
        for (std::size_t k = 0; k < n_bins; ++k) {
            double level = in_1e[k] ? level_1e : in_2e[k] ? level_2e : 0.0;
            if (config.noise_mode == NoiseMode::poisson && level > 0.0) {
                std::poisson_distribution<long long> counts(level * grid_width);
                level = static_cast<double>(counts(rng)) / grid_width;
            }
            r.intensities[k] = round_to_output(level);
        }
        records.push_back(std::move(r));
    }
    return SpectralMap(std::move(energies), std::move(records));
}

YieldCurve perturb_yields(YieldCurve curve, double relative_sigma, std::uint64_t seed) {
    if (!(relative_sigma >= 0.0))
        throw ValidationError("noise level must be >= 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& p : curve.points) {
        double factor = std::max(0.0, 1.0 + relative_sigma * normal(rng));
        p.yield_1e *= factor;
        p.intensity_1e *= factor;
    }
    return curve;
}

} // namespace shotnoise
