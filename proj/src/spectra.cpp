#include "shotnoise/spectra.hpp"

#include "shotnoise/errors.hpp"
#include "shotnoise/format.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace shotnoise {

namespace {

void validate_grid(std::span<const double> energies) {
    if (energies.size() < 2)
        throw ValidationError("energy grid needs at least 2 bins");
    for (double e : energies) {
        if (!std::isfinite(e))
            throw ValidationError("energy grid has a non-finite entry");
    }
    const double width = energies[1] - energies[0];
    if (!(width > 0.0))
        throw ValidationError("energy grid must be strictly ascending");
    for (std::size_t i = 1; i < energies.size(); ++i) {
        double d = energies[i] - energies[i - 1];
        if (!(d > 0.0))
            throw ValidationError("energy grid must be strictly ascending");
        if (std::abs(d - width) > energy_tolerance)
            throw ValidationError("energy grid must be uniformly spaced");
    }
}

void validate_intensities(std::span<const double> intensities) {
    for (double v : intensities) {
        if (!(v >= 0.0) || std::isinf(v))
            throw ValidationError("intensities must be finite and >= 0");
    }
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

double field_number(std::string_view text, std::size_t line, const char* what) {
    double v = 0.0;
    if (!parse_number(text, v) || !std::isfinite(v))
        throw ParseError(line, std::string("bad ") + what + " \"" + std::string(text) + "\"");
    return v;
}

} // namespace

Spectrum::Spectrum(std::vector<double> energies, std::vector<double> intensities)
    : energies_(std::move(energies)), intensities_(std::move(intensities)) {
    validate_grid(energies_);
    if (intensities_.size() != energies_.size())
        throw GridMismatchError("spectrum has " + std::to_string(intensities_.size()) +
                                " intensities for " + std::to_string(energies_.size()) + " energies");
    validate_intensities(intensities_);
}

void Band::validate() const {
    if (!(lo > 0.0 && lo < hi) || !std::isfinite(hi))
        throw ValidationError("band needs 0 < lo < hi, got [" + format_number(lo) + ", " +
                              format_number(hi) + "]");
}

SpectralMap::SpectralMap(std::vector<double> energies, std::vector<MapRecord> records)
    : energies_(std::move(energies)), records_(std::move(records)) {
    validate_grid(energies_);
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (r.intensities.size() != energies_.size())
            throw GridMismatchError("record at step " + std::to_string(r.step) + " has " +
                                    std::to_string(r.intensities.size()) + " intensities for " +
                                    std::to_string(energies_.size()) + " energies");
        if (i > 0 && r.step <= records_[i - 1].step)
            throw NonMonotoneStepError("step " + std::to_string(r.step) + " does not exceed step " +
                                       std::to_string(records_[i - 1].step));
        if (!std::isfinite(r.displacement) || !std::isfinite(r.conductance))
            throw ValidationError("record at step " + std::to_string(r.step) + " is not finite");
        if (r.conductance < 0.0)
            throw ValidationError("record at step " + std::to_string(r.step) + " has negative conductance");
        validate_intensities(r.intensities);
    }
}

Spectrum SpectralMap::spectrum(std::size_t i) const {
    return Spectrum(energies_, records_.at(i).intensities);
}

SpectralMap parse_map(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line))
            return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        return true;
    };

    if (!next_line())
        throw ParseError(1, "missing header");
    auto header = split(line);
    if (header.size() < 5 || header[0] != "step" || header[1] != "displacement_nm" ||
        header[2] != "conductance_G0")
        throw ParseError(line_no, "header must be step,displacement_nm,conductance_G0,E:<e1>,E:<e2>,...");
    std::vector<double> energies;
    for (std::size_t i = 3; i < header.size(); ++i) {
        if (!header[i].starts_with("E:"))
            throw ParseError(line_no, "energy column \"" + std::string(header[i]) + "\" must start with E:");
        energies.push_back(field_number(header[i].substr(2), line_no, "energy"));
    }
    try {
        validate_grid(energies);
    } catch (const ValidationError& e) {
        throw ParseError(line_no, e.what());
    }

    std::vector<MapRecord> records;
    while (next_line()) {
        if (line.empty())
            continue;
        auto fields = split(line);
        if (fields.size() != energies.size() + 3)
            throw GridMismatchError("line " + std::to_string(line_no) + ": expected " +
                                    std::to_string(energies.size() + 3) + " columns, found " +
                                    std::to_string(fields.size()));
        MapRecord r;
        auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), r.step);
        if (ec != std::errc() || ptr != fields[0].data() + fields[0].size())
            throw ParseError(line_no, "bad step \"" + std::string(fields[0]) + "\"");
        if (!records.empty() && r.step <= records.back().step)
            throw NonMonotoneStepError("line " + std::to_string(line_no) + ": step " +
                                       std::to_string(r.step) + " does not exceed step " +
                                       std::to_string(records.back().step));
        r.displacement = field_number(fields[1], line_no, "displacement");
        r.conductance = field_number(fields[2], line_no, "conductance");
        if (r.conductance < 0.0)
            throw ParseError(line_no, "negative conductance");
        r.intensities.reserve(energies.size());
        for (std::size_t i = 3; i < fields.size(); ++i) {
            double v = field_number(fields[i], line_no, "intensity");
            if (v < 0.0)
                throw ParseError(line_no, "negative intensity " + std::string(fields[i]) + " at step " +
                                              std::to_string(r.step));
            r.intensities.push_back(v);
        }
        records.push_back(std::move(r));
    }
    return SpectralMap(std::move(energies), std::move(records));
}

SpectralMap parse_map(const std::string& text) {
    std::istringstream in(text);
    return parse_map(in);
}

std::string serialize_map(const SpectralMap& map) {
    std::string out = "step,displacement_nm,conductance_G0";
    for (double e : map.energies()) {
        out += ",E:";
        out += format_number(e);
    }
    out += '\n';
    for (const auto& r : map.records()) {
        out += std::to_string(r.step);
        out += ',';
        out += format_number(r.displacement);
        out += ',';
        out += format_number(r.conductance);
        for (double v : r.intensities) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

double band_integrate(const Spectrum& spectrum, const Band& band) {
    band.validate();
    auto energies = spectrum.energies();
    auto intensities = spectrum.intensities();
    double sum = 0.0;
    std::size_t bins = 0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (band.contains(energies[i])) {
            sum += intensities[i];
            ++bins;
        }
    }
    if (bins == 0)
        throw EmptyOverlapError("band [" + format_number(band.lo) + ", " + format_number(band.hi) +
                                "] eV contains no bin of the energy grid [" + format_number(energies.front()) +
                                ", " + format_number(energies.back()) + "] eV");
    return sum * spectrum.bin_width();
}

EmissionBands default_bands(double voltage) {
    if (!(voltage > 0.0) || !std::isfinite(voltage))
        throw ValidationError("default bands need a positive voltage");
    // Snap to 1e-12 eV so 1.6 V yields the decimal edges 1.19, 1.47, 1.6, 2.08.
    auto edge = [voltage](double fraction) { return std::round(fraction * voltage * 1e12) / 1e12; };
    return {{edge(band_1e_lo_fraction), edge(band_1e_hi_fraction)},
            {band_2e_lo_fraction * voltage, edge(band_2e_hi_fraction)}};
}

std::vector<TracePoint> intensity_trace(const SpectralMap& map, const Band& band) {
    std::vector<TracePoint> out;
    out.reserve(map.size());
    for (std::size_t i = 0; i < map.size(); ++i)
        out.push_back({map.records()[i].conductance, band_integrate(map.spectrum(i), band)});
    return out;
}

} // namespace shotnoise
