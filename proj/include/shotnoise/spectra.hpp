#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace shotnoise {

/// Photon spectrum on a uniform grid of bin-center energies (eV), intensities
/// in counts s^-1 eV^-1.
class Spectrum {
public:
    Spectrum(std::vector<double> energies, std::vector<double> intensities);

    std::span<const double> energies() const noexcept { return energies_; }
    std::span<const double> intensities() const noexcept { return intensities_; }
    double bin_width() const noexcept { return energies_[1] - energies_[0]; }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<double> energies_;
    std::vector<double> intensities_;
};

/// Uniform-spacing tolerance of energy grids and slack on band edges (eV).
inline constexpr double energy_tolerance = 1e-9;

/// Closed photon-energy interval [lo, hi] in eV.
struct Band {
    double lo = 0.0;
    double hi = 0.0;

    void validate() const;
    double width() const noexcept { return hi - lo; }
    bool contains(double energy) const noexcept {
        return energy >= lo - energy_tolerance && energy <= hi + energy_tolerance;
    }

    friend bool operator==(const Band&, const Band&) = default;
};

struct MapRecord {
    std::int64_t step = 0;
    double displacement = 0.0; // nm
    double conductance = 0.0;  // G/G0
    std::vector<double> intensities;

    friend bool operator==(const MapRecord&, const MapRecord&) = default;
};

/// Series of spectra recorded along a tip approach, all on one energy grid.
class SpectralMap {
public:
    SpectralMap(std::vector<double> energies, std::vector<MapRecord> records);

    std::span<const double> energies() const noexcept { return energies_; }
    std::span<const MapRecord> records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    Spectrum spectrum(std::size_t i) const;

    friend bool operator==(const SpectralMap&, const SpectralMap&) = default;

private:
    std::vector<double> energies_;
    std::vector<MapRecord> records_;
};

/// Parses the spectral-map CSV:
///   step,displacement_nm,conductance_G0,E:<e1>,E:<e2>,...
///   <int>,<nm>,<G0>,<intensity>,...
SpectralMap parse_map(std::istream& in);
SpectralMap parse_map(const std::string& text);

/// Canonical CSV rendering (9 significant digits, LF line endings).
std::string serialize_map(const SpectralMap& map);

/// Rectangle-rule integral over the bins whose centers lie in the band.
double band_integrate(const Spectrum& spectrum, const Band& band);

struct EmissionBands {
    Band one_electron;
    Band two_electron;
};

/// Band edges as fractions of the quantum cutoff eV.
inline constexpr double band_1e_lo_fraction = 0.74375;
inline constexpr double band_1e_hi_fraction = 0.91875;
inline constexpr double band_2e_lo_fraction = 1.0;
inline constexpr double band_2e_hi_fraction = 1.3;

/// 1e band [0.74375, 0.91875] eV and 2e band [1, 1.3] eV, in units of the
/// cutoff e|V|. At 1.6 V these are 1.19-1.47 eV and 1.60-2.08 eV.
EmissionBands default_bands(double voltage);

struct TracePoint {
    double g;
    double intensity; // counts/s
};

std::vector<TracePoint> intensity_trace(const SpectralMap& map, const Band& band);

} // namespace shotnoise
