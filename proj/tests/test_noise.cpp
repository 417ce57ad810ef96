#include "oracles.hpp"

#include "shotnoise/constants.hpp"
#include "shotnoise/errors.hpp"
#include "shotnoise/noise.hpp"

#include <doctest.h>

#include <random>

using namespace shotnoise;

TEST_SUITE("noise") {

TEST_CASE("schottky") {
    CHECK(schottky(0.0).value == 0.0);
    CHECK(schottky(1e-6).value == doctest::Approx(3.204353268e-25).epsilon(1e-12));
    CHECK(schottky(-1e-6).value == schottky(1e-6).value);
    const double current = 0.93 * constants::G0 * 1.6;
    CHECK(current == doctest::Approx(115.29160494e-6).epsilon(1e-9));
    CHECK(schottky(current).value == doctest::Approx(3.694350311e-23).epsilon(1e-9));
}

TEST_CASE("shot noise") {
    CHECK(shot_noise({1.0}, 1e-3).value == 0.0);
    CHECK(shot_noise({0.5}, 1e-6).value == doctest::Approx(1.602176634e-25).epsilon(1e-12));
    CHECK(shot_noise({0.93, 0.07}, 1e-6).value == doctest::Approx(4.172067955e-26).epsilon(1e-9));
    CHECK_THROWS_AS(shot_noise(ChannelSet{}, 1e-6), ZeroConductanceError);
}

TEST_CASE("coth forms") {
    for (double x : {1e-8, 1e-3, 0.1, 1.0, 4.6418, 10.0, 19.9}) {
        CHECK(coth(x) == doctest::Approx(static_cast<double>(oracle::coth(x))).epsilon(1e-13));
        CHECK(x_coth_x(x) == doctest::Approx(static_cast<double>(x * oracle::coth(x))).epsilon(1e-13));
    }
    CHECK(coth(20.5) == 1.0);
    CHECK(coth(1e6) == 1.0);
    CHECK(x_coth_x(0.0) == 1.0);
}

TEST_CASE("thermal noise examples") {
    NoiseEnvironment cold{1.6, 0.0};
    CHECK(thermal_noise({0.93}, cold).value == doctest::Approx(2.586045217e-24).epsilon(1e-9));
    CHECK(thermal_noise({1.0}, {0.0, 300.0}).value == doctest::Approx(1.283687412e-24).epsilon(1e-9));
    CHECK(thermal_noise({0.3, 0.7}, {0.0, 0.0}).value == 0.0);
    CHECK_THROWS_AS(thermal_noise({0.5}, {1.0, -1.0}), ValidationError);
}

TEST_CASE("thermal noise matches direct evaluation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> volts(-2.0, 2.0), kelvin(1.0, 5000.0);
    for (int i = 0; i < 300; ++i) {
        auto t = oracle::random_channels(rng, 4);
        double v = volts(rng), temp = kelvin(rng);
        CHECK(thermal_noise(ChannelSet(t), {v, temp}).value ==
              doctest::Approx(oracle::thermal_noise(t, v, temp)).epsilon(1e-12));
    }
}

TEST_CASE("thermal noise limits") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        auto t = oracle::random_channels(rng, 4);
        ChannelSet c(t);
        const double g = total_transmission(c);
        // zero bias: Johnson-Nyquist 4kTG
        double jn = 4.0 * constants::k * 300.0 * constants::G0 * g;
        CHECK(thermal_noise(c, {1e-12, 300.0}).value == doctest::Approx(jn).epsilon(1e-6));
        CHECK(thermal_noise(c, {0.0, 300.0}).value == doctest::Approx(jn).epsilon(1e-12));
        // T = 0 is the analytic limit: reduced shot noise exactly
        double shot = shot_noise(c, g * constants::G0 * 1.6).value;
        CHECK(thermal_noise(c, {1.6, 0.0}).value == doctest::Approx(shot).epsilon(1e-12));
        // At small T the excess is the thermal term 4kT G0 sum T^2.
        double sq = 0.0;
        for (double x : t)
            sq += x * x;
        double excess = thermal_noise(c, {1.6, 0.01}).value - shot;
        CHECK(excess == doctest::Approx(4.0 * constants::k * 0.01 * constants::G0 * sq).epsilon(1e-6));
    }
}

TEST_CASE("thermal noise is non-decreasing in temperature") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        ChannelSet c(oracle::random_channels(rng, 4));
        for (double v : {0.0, 0.01, 1.6}) {
            double previous = thermal_noise(c, {v, 0.0}).value;
            for (int step = 1; step <= 500; ++step) {
                double p = thermal_noise(c, {v, step * 10.0}).value;
                CHECK(p >= previous);
                CHECK(p >= 0.0);
                previous = p;
            }
        }
    }
}

TEST_CASE("normalized yield") {
    auto two = DecompositionModel::two_channel();
    NoiseEnvironment hot{1.6, 2000.0};
    CHECK(normalized_yield_model(0.93, two, hot) == doctest::Approx(0.2703157624).epsilon(1e-9));
    CHECK(normalized_yield_model(0.93, two, {1.6, 0.0}) == doctest::Approx(0.07).epsilon(1e-12));
    CHECK(normalized_yield_model(0.001, two, hot) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(normalized_yield_model(0.001, two, hot) == doctest::Approx(0.9992153933).epsilon(1e-9));
    CHECK_THROWS_AS(normalized_yield_model(0.0, two, hot), ZeroConductanceError);
    CHECK_THROWS_AS(normalized_yield_model(2.0, two, hot), CapacityExceededError);
    CHECK_THROWS_AS(normalized_yield({0.5}, {0.0, 0.0}), ValidationError);

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> gs(1e-4, two.capacity());
    for (int i = 0; i < 200; ++i) {
        double g = gs(rng);
        auto c = decompose(g, two);
        CHECK(std::abs(normalized_yield_model(g, two, {1.6, 0.0}) - fano(c)) <= 1e-12);
        std::vector<double> t(c.transmissions().begin(), c.transmissions().end());
        CHECK(normalized_yield_model(g, two, hot) ==
              doctest::Approx(oracle::normalized_yield(t, 1.6, 2000.0)).epsilon(1e-12));
    }
}

TEST_CASE("mc_fano examples") {
    auto open = mc_fano({1.0}, 1'000'000, 1);
    CHECK(open.estimate == 0.0);
    CHECK(open.std_error == 0.0);

    auto half = mc_fano({0.5}, 1'000'000, 42);
    CHECK(std::abs(half.estimate - 0.5) <= 3.0 * half.std_error);
    CHECK(half.std_error > 0.0);
    CHECK(half.std_error < 0.01);

    auto contact = mc_fano({0.93, 0.07}, 1'000'000, 42);
    CHECK(std::abs(contact.estimate - 0.1302) <= 3.0 * contact.std_error);

    CHECK_THROWS_AS(mc_fano({0.5}, 999, 1), ValidationError);
    CHECK_THROWS_AS(mc_fano({0.0}, 10000, 1), ZeroConductanceError);
}

TEST_CASE("mc_fano is independent of the worker count") {
    ChannelSet c{0.3, 0.8, 0.55};
    auto one = mc_fano(c, 200'003, 9, 1);
    for (unsigned w : {2u, 3u, 7u, 0u}) {
        auto other = mc_fano(c, 200'003, 9, w);
        CHECK(other.estimate == one.estimate);
        CHECK(other.std_error == one.std_error);
    }
    CHECK(mc_fano(c, 200'003, 10, 1).estimate != one.estimate);
}

TEST_CASE("mc_fano std error tracks the sampling spread") {
    // Across independent seeds the estimates scatter by about std_error.
    ChannelSet c{0.4, 0.6};
    const double exact = fano(c);
    double sum_sq = 0.0, se = 0.0;
    const int runs = 40;
    for (int s = 0; s < runs; ++s) {
        auto r = mc_fano(c, 100'000, 1000 + s * 1000);
        sum_sq += (r.estimate - exact) * (r.estimate - exact);
        se += r.std_error;
    }
    double rms = std::sqrt(sum_sq / runs);
    se /= runs;
    CHECK(rms / se > 0.6);
    CHECK(rms / se < 1.6);
}

}
