#include "shotnoise/analysis.hpp"

#include "shotnoise/constants.hpp"
#include "shotnoise/errors.hpp"
#include "shotnoise/format.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

namespace shotnoise {

namespace {

// Intercept of the least-squares line y = a + b x.
double intercept(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        return my;
    return my - (sxy / sxx) * mx;
}

} // namespace

YieldCurve yield_curve(const SpectralMap& map, double voltage, const Band& band_1e, const Band& band_2e,
                       const NormWindow& window) {
    if (!(voltage > 0.0) || !std::isfinite(voltage))
        throw ValidationError("yield curve needs a positive voltage");
    if (map.empty())
        throw InsufficientPointsError("spectral map has no records");
    if (!(window.g_lo < window.g_hi))
        throw ValidationError("normalization window needs g_lo < g_hi");
    band_1e.validate();
    band_2e.validate();

    YieldCurve curve;
    curve.voltage = voltage;
    curve.points.reserve(map.size());
    std::vector<double> window_g;
    std::vector<double> window_raw;

    for (std::size_t i = 0; i < map.size(); ++i) {
        const auto& r = map.records()[i];
        if (!(r.conductance > 0.0))
            throw ValidationError("zero current at step " + std::to_string(r.step));
        const Spectrum s = map.spectrum(i);
        YieldPoint p;
        p.g = r.conductance;
        p.current = p.g * constants::G0 * voltage;
        p.intensity_1e = band_integrate(s, band_1e);
        p.intensity_2e = band_integrate(s, band_2e);
        p.yield_1e = p.intensity_1e / p.current;
        p.yield_2e = p.intensity_2e / p.current;
        if (p.g >= window.g_lo && p.g <= window.g_hi) {
            window_g.push_back(p.g);
            window_raw.push_back(p.yield_1e);
        }
        curve.points.push_back(p);
    }

    if (window_g.size() < 3)
        throw InsufficientPointsError("normalization window [" + format_number(window.g_lo) + ", " +
                                      format_number(window.g_hi) + "] G0 holds " +
                                      std::to_string(window_g.size()) + " points, need 3");

    // The current is proportional to g, so the intercept is the same in either.
    curve.normalization_1e = intercept(window_g, window_raw);
    if (!(curve.normalization_1e > 0.0))
        throw ValidationError("low-conductance 1e yield is not positive; cannot normalize");

    for (const auto& p : curve.points)
        curve.normalization_2e = std::max(curve.normalization_2e, p.yield_2e);

    for (auto& p : curve.points) {
        p.yield_1e /= curve.normalization_1e;
        p.yield_2e = curve.normalization_2e > 0.0 ? p.yield_2e / curve.normalization_2e : 0.0;
    }
    return curve;
}

std::vector<ModelComparison> compare_to_model(const YieldCurve& curve, const DecompositionModel& model,
                                              const NoiseEnvironment& env) {
    std::vector<ModelComparison> out;
    out.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        double predicted = normalized_yield_model(p.g, model, env);
        out.push_back({p.g, p.yield_1e, predicted, p.yield_1e - predicted});
    }
    return out;
}

double fit_objective(const YieldCurve& curve, const DecompositionModel& model, double voltage,
                     double temperature) {
    const NoiseEnvironment env{voltage, temperature};
    double sum = 0.0;
    for (const auto& p : curve.points) {
        if (p.g <= fit_min_conductance)
            continue;
        double r = p.yield_1e - normalized_yield_model(p.g, model, env);
        sum += r * r;
    }
    return sum;
}

FitResult fit_temperature(const YieldCurve& curve, const DecompositionModel& model, double voltage,
                          const TemperatureBounds& bounds) {
    if (!(bounds.lo > 0.0 && bounds.lo < bounds.hi) || !std::isfinite(bounds.hi))
        throw ValidationError("temperature bounds need 0 < lo < hi");
    if (!(voltage > 0.0) || !std::isfinite(voltage))
        throw ValidationError("temperature fit needs a positive voltage");
    auto usable = std::count_if(curve.points.begin(), curve.points.end(),
                                [](const YieldPoint& p) { return p.g > fit_min_conductance; });
    if (static_cast<std::size_t>(usable) < fit_min_points)
        throw InsufficientPointsError("temperature fit needs " + std::to_string(fit_min_points) +
                                      " points with g > " + format_number(fit_min_conductance) + ", have " +
                                      std::to_string(usable));

    auto f = [&](double t) { return fit_objective(curve, model, voltage, t); };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = bounds.lo;
    double b = bounds.hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    std::size_t iterations = 0;
    while (b - a > fit_tolerance_kelvin && iterations < fit_max_iterations) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++iterations;
    }

    FitResult result;
    result.iterations = iterations;
    result.converged = b - a <= fit_tolerance_kelvin;
    result.temperature = 0.5 * (a + b);
    result.residual_sum_squares = f(result.temperature);
    // Boundary optimum: report the bound itself.
    for (double edge : {bounds.lo, bounds.hi}) {
        if (std::abs(edge - result.temperature) <= fit_tolerance_kelvin) {
            double fe = f(edge);
            if (fe <= result.residual_sum_squares) {
                result.temperature = edge;
                result.residual_sum_squares = fe;
            }
        }
    }
    return result;
}

std::string serialize_yield_curve(const YieldCurve& curve) {
    std::string out = "conductance_G0,current_A,intensity_1e,intensity_2e,yield_1e,yield_2e\n";
    for (const auto& p : curve.points) {
        for (double v : {p.g, p.current, p.intensity_1e, p.intensity_2e, p.yield_1e}) {
            out += format_number(v);
            out += ',';
        }
        out += format_number(p.yield_2e);
        out += '\n';
    }
    return out;
}

YieldCurve parse_yield_curve(std::istream& in, double voltage) {
    std::string line;
    std::size_t line_no = 0;
    YieldCurve curve;
    curve.voltage = voltage;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line_no == 1) {
            if (line != "conductance_G0,current_A,intensity_1e,intensity_2e,yield_1e,yield_2e")
                throw ParseError(1, "unexpected yield-curve header");
            continue;
        }
        if (line.empty())
            continue;
        double v[6];
        std::size_t pos = 0;
        for (int i = 0; i < 6; ++i) {
            std::size_t end = line.find(',', pos);
            if ((i < 5) != (end != std::string::npos))
                throw ParseError(line_no, "expected 6 columns");
            std::string_view field(line.data() + pos, (end == std::string::npos ? line.size() : end) - pos);
            if (!parse_number(field, v[i]) || !std::isfinite(v[i]))
                throw ParseError(line_no, "bad number \"" + std::string(field) + "\"");
            pos = end + 1;
        }
        if (!(v[0] > 0.0))
            throw ParseError(line_no, "conductance must be positive");
        curve.points.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
    }
    if (line_no == 0)
        throw ParseError(1, "missing header");
    return curve;
}

YieldCurve parse_yield_curve(const std::string& text, double voltage) {
    std::istringstream in(text);
    return parse_yield_curve(in, voltage);
}

} // namespace shotnoise
