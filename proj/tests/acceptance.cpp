// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "shotnoise/analysis.hpp"
#include "shotnoise/constants.hpp"
#include "shotnoise/noise.hpp"
#include "shotnoise/spectra.hpp"
#include "shotnoise/synth.hpp"
#include "shotnoise/transport.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace shotnoise;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> check;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Outcome fano_minimum() {
    const auto model = DecompositionModel::two_channel();
    const NoiseEnvironment cold{1.6, 0.0};
    const std::size_t n = 1000;
    const double lo = 0.5, hi = 1.6, step = (hi - lo) / static_cast<double>(n - 1);
    double best_g = lo, best = 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        double g = lo + step * static_cast<double>(i);
        double y = normalized_yield_model(g, model, cold);
        if (y < best) {
            best = y;
            best_g = g;
        }
    }
    const double at_contact = normalized_yield_model(0.93, model, cold);
    bool pass = std::abs(best_g - 0.93) <= step && std::abs(at_contact - 0.07) <= 1e-12;
    return {pass, fmt("argmin g = %.6f (grid step %.6f), F(0.93) = %.15f", best_g, step, at_contact)};
}

Outcome yield_reduction() {
    double y = normalized_yield_model(0.93, DecompositionModel::two_channel(), {1.6, 2000.0});
    return {std::abs(y - 0.270) <= 0.005, fmt("yield(0.93; 1.6 V, 2000 K) = %.6f, reduction %.1f%%", y, 100.0 * (1.0 - y))};
}

YieldCurve default_curve(const SynthConfig& cfg) {
    auto bands = default_bands(cfg.voltage);
    return yield_curve(synth_map(cfg), cfg.voltage, bands.one_electron, bands.two_electron);
}

Outcome temperature_fit() {
    SynthConfig cfg; // 1.6 V, 2000 K
    const TemperatureBounds bounds{1.0, 10000.0};
    auto curve = default_curve(cfg);
    auto clean = fit_temperature(curve, cfg.model, cfg.voltage, bounds);
    auto noisy = fit_temperature(perturb_yields(curve, 0.02, 7), cfg.model, cfg.voltage, bounds);
    bool pass = clean.converged && std::abs(clean.temperature - 2000.0) <= 1.0 && noisy.converged &&
                std::abs(noisy.temperature - 2000.0) <= 0.05 * 2000.0;
    return {pass, fmt("noiseless T = %.3f K (%zu it), 2%% noise seed 7 T = %.1f K", clean.temperature,
                      clean.iterations, noisy.temperature)};
}

Outcome monte_carlo() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> trans(0.0, 1.0);
    int ok = 0;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> t(static_cast<std::size_t>(count(rng)));
        for (auto& x : t)
            x = trans(rng);
        ChannelSet c(t);
        auto mc = mc_fano(c, 1'000'000, static_cast<std::uint64_t>(1000 * (i + 1)));
        double z = std::abs(mc.estimate - fano(c)) / mc.std_error;
        worst = std::max(worst, z);
        ok += z <= 3.0 ? 1 : 0;
    }
    return {ok == 20, fmt("%d/20 channel sets within 3 std errors, worst %.2f", ok, worst)};
}

Outcome noise_limits() {
    using namespace constants;
    const double jn_expected = 4.0 * k * 300.0 * G0;
    const double jn = thermal_noise({1.0}, {1e-12, 300.0}).value;
    const double jn_rel = std::abs(jn - jn_expected) / jn_expected;

    const ChannelSet channels{0.93};
    const double current = total_transmission(channels) * G0 * 1.6;
    const double shot = fano(channels) * 2.0 * e * current;
    const double cold = thermal_noise(channels, {1.6, 0.01}).value;
    const double cold_rel = std::abs(cold - shot) / shot;

    bool pass = jn_rel <= 1e-6 && std::abs(jn - 1.28369e-24) / 1.28369e-24 <= 1e-5 && cold_rel <= 1e-6;
    return {pass, fmt("Johnson-Nyquist %.9e A^2/Hz (rel %.2e); T = 0.01 K, [0.93]: rel %.3e vs F*2eI", jn, jn_rel,
                      cold_rel)};
}

Outcome tunneling_linearity() {
    SynthConfig cfg;
    auto curve = default_curve(cfg);
    double worst = 0.0, worst_g = 0.0;
    int points = 0;
    for (const auto& p : curve.points) {
        if (p.g > 0.05)
            continue;
        ++points;
        if (std::abs(p.yield_1e - 1.0) > worst) {
            worst = std::abs(p.yield_1e - 1.0);
            worst_g = p.g;
        }
    }
    const double at_02 = normalized_yield_model(0.2, cfg.model, {cfg.voltage, cfg.temperature});
    bool pass = points > 0 && worst <= 0.01 && std::abs(at_02 - 1.0) > 0.05;
    return {pass, fmt("%d points with g <= 0.05, max |yield - 1| = %.4f at g = %.4f; model yield(0.2) = %.4f", points,
                      worst, worst_g, at_02)};
}

Outcome multi_atom() {
    const auto model = DecompositionModel::atoms(3);
    const NoiseEnvironment cold{1.6, 0.0};
    const double lo = 3.0, hi = std::min(4.0, model.capacity());
    const std::size_t n = 200;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = normalized_yield_model(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1), model, cold);
    std::size_t peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    bool rises = peak > 0, falls = peak + 1 < n;
    for (std::size_t i = 1; i <= peak; ++i)
        rises = rises && y[i] >= y[i - 1];
    for (std::size_t i = peak + 1; i < n; ++i)
        falls = falls && y[i] <= y[i - 1];
    double g_peak = lo + (hi - lo) * static_cast<double>(peak) / static_cast<double>(n - 1);
    return {rises && falls, fmt("grid [%.2f, %.2f]: %.4f -> peak %.4f at g = %.3f -> %.4f", lo, hi, y.front(), y[peak],
                                g_peak, y.back())};
}

Outcome closed_loop() {
    SynthConfig cfg;
    const std::string text = serialize_map(synth_map(cfg));
    const SpectralMap map = parse_map(text);
    const bool identical = serialize_map(map) == text;
    auto bands = default_bands(cfg.voltage);
    auto curve = yield_curve(map, cfg.voltage, bands.one_electron, bands.two_electron);
    double worst = 0.0;
    for (const auto& p : curve.points)
        worst = std::max(worst, std::abs(p.yield_1e - normalized_yield_model(p.g, cfg.model, {cfg.voltage, cfg.temperature})));
    return {identical && worst <= 1e-9,
            fmt("max |recovered - model| = %.3e, CSV round trip %s", worst, identical ? "byte-identical" : "DIFFERS")};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Fano minimum at 0.93 G0", 1.0, fano_minimum},
        {2, "~70% yield reduction at 2000 K", 1.0, yield_reduction},
        {3, "temperature fit recovery", 5.0, temperature_fit},
        {4, "Monte Carlo oracle equivalence", 30.0, monte_carlo},
        {5, "Johnson-Nyquist and T -> 0 limits", 1.0, noise_limits},
        {6, "tunneling linearity", 1.0, tunneling_linearity},
        {7, "multi-atom non-monotonicity", 1.0, multi_atom},
        {8, "closed-loop pipeline", 2.0, closed_loop},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = seconds <= c.time_limit_s;
        bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("[%s] %d. %s: %s (%.3f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), seconds, c.time_limit_s);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
