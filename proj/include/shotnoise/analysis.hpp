#pragma once

#include "shotnoise/noise.hpp"
#include "shotnoise/spectra.hpp"
#include "shotnoise/transport.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace shotnoise {

struct YieldPoint {
    double g = 0.0;            // G/G0
    double current = 0.0;      // A
    double intensity_1e = 0.0; // counts/s
    double intensity_2e = 0.0; // counts/s
    double yield_1e = 0.0;
    double yield_2e = 0.0;
};

/// Photon yield (band intensity per current) versus conductance.
/// normalization_* are the raw yields (counts/s per A) that map to a
/// normalized yield of 1.
struct YieldCurve {
    double voltage = 0.0;
    std::vector<YieldPoint> points;
    double normalization_1e = 0.0;
    double normalization_2e = 0.0;
};

/// Conductance range of the tunneling regime used to anchor the 1e
/// normalization.
struct NormWindow {
    double g_lo = 1e-3;
    double g_hi = 5e-2;
};

/// Builds the yield curve of a spectral map, assuming the ohmic current
/// I = g G0 V.
///
/// The 1e normalization is the low-conductance limit of intensity/I: a
/// least-squares line through (I, intensity/I) over the window points,
/// evaluated at I = 0. Within the window a single channel is partially open,
/// where the modelled yield is exactly linear in g, so the fit recovers the
/// detector gain without bias. The 2e yield vanishes at low conductance and
/// is scaled to a peak of 1 instead.
YieldCurve yield_curve(const SpectralMap& map, double voltage, const Band& band_1e, const Band& band_2e,
                       const NormWindow& window = {});

struct ModelComparison {
    double g;
    double measured;
    double predicted;
    double residual; // measured - predicted
};

/// 1e yields against normalized_yield_model at each point.
std::vector<ModelComparison> compare_to_model(const YieldCurve& curve, const DecompositionModel& model,
                                              const NoiseEnvironment& env);

struct TemperatureBounds {
    double lo = 1.0;
    double hi = 10000.0;
};

struct FitResult {
    double temperature = 0.0; // K
    double residual_sum_squares = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Only points above this conductance enter the temperature fit.
inline constexpr double fit_min_conductance = 0.2;
inline constexpr std::size_t fit_min_points = 5;
inline constexpr double fit_tolerance_kelvin = 1.0;
inline constexpr std::size_t fit_max_iterations = 200;

/// Sum over fit points of (yield_1e - normalized_yield_model(g; T))^2.
double fit_objective(const YieldCurve& curve, const DecompositionModel& model, double voltage,
                     double temperature);

/// Golden-section search for the electron temperature.
FitResult fit_temperature(const YieldCurve& curve, const DecompositionModel& model, double voltage,
                          const TemperatureBounds& bounds = {});

/// Header `conductance_G0,current_A,intensity_1e,intensity_2e,yield_1e,yield_2e`.
std::string serialize_yield_curve(const YieldCurve& curve);

/// Reads the yield CSV back. Normalizations are not stored in the file and
/// come back as 0.
YieldCurve parse_yield_curve(std::istream& in, double voltage);
YieldCurve parse_yield_curve(const std::string& text, double voltage);

} // namespace shotnoise
