#include "shotnoise/noise.hpp"

#include "shotnoise/constants.hpp"
#include "shotnoise/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace shotnoise {

namespace {

struct ChannelSums {
    double transmission = 0.0; // sum T
    double partition = 0.0;    // sum T(1-T)
    double squared = 0.0;      // sum T^2
};

ChannelSums sums(const ChannelSet& channels) {
    ChannelSums s;
    for (double t : channels.transmissions()) {
        s.transmission += t;
        s.partition += t * (1.0 - t);
        s.squared += t * t;
    }
    return s;
}

// 2e|V| coth(e|V|/2kT), written as 4kT * x coth(x) when T > 0.
double shot_prefactor(const NoiseEnvironment& env) {
    using namespace constants;
    const double v = std::abs(env.voltage);
    if (env.temperature == 0.0)
        return 2.0 * e * v;
    const double kt = k * env.temperature;
    return 4.0 * kt * x_coth_x(e * v / (2.0 * kt));
}

} // namespace

void NoiseEnvironment::validate() const {
    if (!(temperature >= 0.0) || std::isinf(temperature))
        throw ValidationError("temperature must be finite and >= 0 K");
    if (!std::isfinite(voltage))
        throw ValidationError("voltage must be finite");
}

double coth(double x) {
    if (x > 20.0)
        return 1.0;
    return 1.0 + 2.0 / std::expm1(2.0 * x);
}

double x_coth_x(double x) {
    x = std::abs(x);
    if (x < 1e-6)
        return 1.0 + x * x / 3.0;
    return x * coth(x);
}

NoiseDensity schottky(double current) {
    return {2.0 * constants::e * std::abs(current)};
}

NoiseDensity shot_noise(const ChannelSet& channels, double current) {
    return {fano(channels) * schottky(current).value};
}

NoiseDensity thermal_noise(const ChannelSet& channels, const NoiseEnvironment& env) {
    env.validate();
    const ChannelSums s = sums(channels);
    const double thermal = 4.0 * constants::k * env.temperature;
    return {constants::G0 * (shot_prefactor(env) * s.partition + thermal * s.squared)};
}

double normalized_yield(const ChannelSet& channels, const NoiseEnvironment& env) {
    env.validate();
    const ChannelSums s = sums(channels);
    if (s.transmission <= 0.0)
        throw ZeroConductanceError();
    const double prefactor = shot_prefactor(env);
    if (prefactor == 0.0)
        throw ValidationError("normalized yield undefined at zero bias and zero temperature");
    const double thermal = 4.0 * constants::k * env.temperature;
    return (prefactor * s.partition + thermal * s.squared) / (prefactor * s.transmission);
}

double normalized_yield_model(double g, const DecompositionModel& model, const NoiseEnvironment& env) {
    return normalized_yield(decompose(g, model), env);
}

namespace {

__extension__ using int128 = __int128;

struct BatchMoments {
    std::uint64_t n = 0;
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
};

BatchMoments run_batch(std::span<const double> t, std::uint64_t attempts, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BatchMoments m;
    m.n = attempts;
    for (std::uint64_t a = 0; a < attempts; ++a) {
        std::uint64_t count = 0;
        for (double p : t) {
            // 53-bit uniform in [0, 1); p = 1 always transmits, p = 0 never.
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            count += u < p ? 1 : 0;
        }
        m.sum += count;
        m.sum_sq += count * count;
    }
    return m;
}

// Unbiased variance over mean, from exact integer moments.
double variance_over_mean(const BatchMoments& m) {
    if (m.sum == 0 || m.n < 2)
        return 0.0;
    const auto n = static_cast<int128>(m.n);
    const int128 numerator = n * static_cast<int128>(m.sum_sq) -
                               static_cast<int128>(m.sum) * static_cast<int128>(m.sum);
    // var / mean = numerator / (n (n-1)) * n / sum = numerator / ((n-1) sum)
    return static_cast<double>(numerator) /
           (static_cast<double>(m.n - 1) * static_cast<double>(m.sum));
}

} // namespace

MonteCarloFano mc_fano(const ChannelSet& channels, std::uint64_t attempts, std::uint64_t seed,
                       unsigned workers) {
    if (attempts < 1000)
        throw ValidationError("mc_fano needs at least 1000 attempts");
    if (total_transmission(channels) <= 0.0)
        throw ZeroConductanceError();

    std::vector<BatchMoments> batches(mc_batches);
    const std::uint64_t base = attempts / mc_batches;
    const std::uint64_t extra = attempts % mc_batches;

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, mc_batches);

    auto t = channels.transmissions();
    auto work = [&](unsigned w) {
        for (std::size_t b = w; b < mc_batches; b += workers) {
            std::uint64_t n = base + (b < extra ? 1 : 0);
            batches[b] = run_batch(t, n, seed + b);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w)
            pool.emplace_back(work, w);
        work(0);
    }

    BatchMoments total;
    std::vector<double> per_batch;
    per_batch.reserve(mc_batches);
    for (const auto& b : batches) {
        total.n += b.n;
        total.sum += b.sum;
        total.sum_sq += b.sum_sq;
        per_batch.push_back(variance_over_mean(b));
    }

    double mean = 0.0;
    for (double f : per_batch)
        mean += f;
    mean /= static_cast<double>(per_batch.size());
    double ss = 0.0;
    for (double f : per_batch)
        ss += (f - mean) * (f - mean);
    const double batches_d = static_cast<double>(per_batch.size());
    const double std_error = std::sqrt(ss / (batches_d - 1.0) / batches_d);

    return {variance_over_mean(total), std_error};
}

} // namespace shotnoise
