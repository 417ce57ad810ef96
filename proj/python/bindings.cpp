#include "shotnoise/analysis.hpp"
#include "shotnoise/constants.hpp"
#include "shotnoise/errors.hpp"
#include "shotnoise/noise.hpp"
#include "shotnoise/spectra.hpp"
#include "shotnoise/synth.hpp"
#include "shotnoise/transport.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace shotnoise;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Landauer channels, Fano factor, finite-temperature noise and photon-yield analysis";
    m.attr("__version__") = "0.1.0";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ZeroConductanceError>(m, "ZeroConductanceError", validation.ptr());
    py::register_exception<CapacityExceededError>(m, "CapacityExceededError", validation.ptr());
    (void)error;

    auto c = m.def_submodule("constants", "CODATA constants (SI)");
    c.attr("e") = constants::e;
    c.attr("h") = constants::h;
    c.attr("k") = constants::k;
    c.attr("G0") = constants::G0;

    // transport
    py::class_<ChannelSet>(m, "ChannelSet")
        .def(py::init<>())
        .def(py::init<std::vector<double>>(), "transmissions"_a)
        .def_property_readonly("transmissions",
                               [](const ChannelSet& s) {
                                   auto t = s.transmissions();
                                   return std::vector<double>(t.begin(), t.end());
                               })
        .def("__len__", &ChannelSet::size)
        .def("__eq__", [](const ChannelSet& a, const ChannelSet& b) { return a == b; })
        .def("__repr__", [](const ChannelSet& s) {
            return "ChannelSet(" + py::repr(py::cast(std::vector<double>(s.transmissions().begin(),
                                                                         s.transmissions().end())))
                                       .cast<std::string>() +
                   ")";
        });
    py::implicitly_convertible<py::list, ChannelSet>();
    py::implicitly_convertible<py::tuple, ChannelSet>();

    py::class_<DecompositionModel>(m, "DecompositionModel")
        .def(py::init<std::vector<double>, std::string>(), "saturations"_a, "description"_a = "")
        .def_static("two_channel", &DecompositionModel::two_channel)
        .def_static("atoms", &DecompositionModel::atoms, "atoms"_a)
        .def_property_readonly("saturations",
                               [](const DecompositionModel& d) {
                                   auto s = d.saturations();
                                   return std::vector<double>(s.begin(), s.end());
                               })
        .def_property_readonly("description", &DecompositionModel::description)
        .def_property_readonly("capacity", &DecompositionModel::capacity);

    m.def("total_transmission", &total_transmission, "channels"_a);
    m.def("fano", &fano, "channels"_a);
    m.def("decompose", &decompose, "g"_a, "model"_a);

    py::enum_<Spacing>(m, "Spacing").value("log", Spacing::log).value("linear", Spacing::linear);
    m.def(
        "fano_curve",
        [](const DecompositionModel& model, double g_min, double g_max, std::size_t n, Spacing spacing) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : fano_curve(model, g_min, g_max, n, spacing))
                out.emplace_back(p.g, p.fano);
            return out;
        },
        "model"_a, "g_min"_a, "g_max"_a, "n_points"_a, "spacing"_a = Spacing::log,
        "List of (g, F) pairs.");

    // noise
    py::class_<NoiseEnvironment>(m, "NoiseEnvironment")
        .def(py::init([](double v, double t) { return NoiseEnvironment{v, t}; }), "voltage"_a,
             "temperature"_a = 0.0)
        .def_readwrite("voltage", &NoiseEnvironment::voltage)
        .def_readwrite("temperature", &NoiseEnvironment::temperature);

    m.def("schottky", [](double i) { return schottky(i).value; }, "current"_a);
    m.def("shot_noise", [](const ChannelSet& c, double i) { return shot_noise(c, i).value; }, "channels"_a,
          "current"_a);
    m.def("thermal_noise", [](const ChannelSet& c, const NoiseEnvironment& env) { return thermal_noise(c, env).value; },
          "channels"_a, "env"_a);
    m.def("normalized_yield", &normalized_yield, "channels"_a, "env"_a);
    m.def("normalized_yield_model", &normalized_yield_model, "g"_a, "model"_a, "env"_a);
    m.def(
        "mc_fano",
        [](const ChannelSet& c, std::uint64_t attempts, std::uint64_t seed, unsigned workers) {
            MonteCarloFano r;
            {
                py::gil_scoped_release release;
                r = mc_fano(c, attempts, seed, workers);
            }
            return py::make_tuple(r.estimate, r.std_error);
        },
        "channels"_a, "attempts"_a, "seed"_a, "workers"_a = 0, "Returns (estimate, std_error).");

    // spectra
    py::class_<Band>(m, "Band")
        .def(py::init([](double lo, double hi) {
                 Band b{lo, hi};
                 b.validate();
                 return b;
             }),
             "lo"_a, "hi"_a)
        .def_readonly("lo", &Band::lo)
        .def_readonly("hi", &Band::hi)
        .def("__repr__", [](const Band& b) {
            return "Band(" + std::to_string(b.lo) + ", " + std::to_string(b.hi) + ")";
        });
    m.def(
        "default_bands",
        [](double v) {
            auto b = default_bands(v);
            return py::make_tuple(b.one_electron, b.two_electron);
        },
        "voltage"_a, "Returns (band_1e, band_2e).");

    py::class_<MapRecord>(m, "MapRecord")
        .def_readonly("step", &MapRecord::step)
        .def_readonly("displacement", &MapRecord::displacement)
        .def_readonly("conductance", &MapRecord::conductance)
        .def_readonly("intensities", &MapRecord::intensities);

    py::class_<SpectralMap>(m, "SpectralMap")
        .def_property_readonly("energies",
                               [](const SpectralMap& s) {
                                   return std::vector<double>(s.energies().begin(), s.energies().end());
                               })
        .def_property_readonly("records",
                               [](const SpectralMap& s) {
                                   return std::vector<MapRecord>(s.records().begin(), s.records().end());
                               })
        .def("__len__", &SpectralMap::size);
    m.def("parse_map", py::overload_cast<const std::string&>(&parse_map), "text"_a);
    m.def("serialize_map", &serialize_map, "map"_a);
    m.def(
        "intensity_trace",
        [](const SpectralMap& map, const Band& band) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : intensity_trace(map, band))
                out.emplace_back(p.g, p.intensity);
            return out;
        },
        "map"_a, "band"_a);

    // analysis
    py::class_<YieldPoint>(m, "YieldPoint")
        .def_readonly("g", &YieldPoint::g)
        .def_readonly("current", &YieldPoint::current)
        .def_readonly("intensity_1e", &YieldPoint::intensity_1e)
        .def_readonly("intensity_2e", &YieldPoint::intensity_2e)
        .def_readonly("yield_1e", &YieldPoint::yield_1e)
        .def_readonly("yield_2e", &YieldPoint::yield_2e);
    py::class_<YieldCurve>(m, "YieldCurve")
        .def_readonly("voltage", &YieldCurve::voltage)
        .def_readonly("points", &YieldCurve::points)
        .def_readonly("normalization_1e", &YieldCurve::normalization_1e)
        .def_readonly("normalization_2e", &YieldCurve::normalization_2e);
    m.def(
        "yield_curve",
        [](const SpectralMap& map, double voltage, const Band& b1, const Band& b2, std::pair<double, double> w) {
            return yield_curve(map, voltage, b1, b2, {w.first, w.second});
        },
        "map"_a, "voltage"_a, "band_1e"_a, "band_2e"_a, "norm_window"_a = std::make_pair(1e-3, 5e-2));
    m.def(
        "compare_to_model",
        [](const YieldCurve& curve, const DecompositionModel& model, const NoiseEnvironment& env) {
            std::vector<py::tuple> out;
            for (const auto& c : compare_to_model(curve, model, env))
                out.push_back(py::make_tuple(c.g, c.measured, c.predicted, c.residual));
            return out;
        },
        "curve"_a, "model"_a, "env"_a, "List of (g, measured, predicted, residual).");

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("temperature", &FitResult::temperature)
        .def_readonly("residual_sum_squares", &FitResult::residual_sum_squares)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged);
    m.def(
        "fit_temperature",
        [](const YieldCurve& curve, const DecompositionModel& model, double voltage, std::pair<double, double> b) {
            return fit_temperature(curve, model, voltage, {b.first, b.second});
        },
        "curve"_a, "model"_a, "voltage"_a, "bounds"_a = std::make_pair(1.0, 10000.0));
    m.def("serialize_yield_curve", &serialize_yield_curve, "curve"_a);

    // synth
    py::enum_<NoiseMode>(m, "NoiseMode").value("none", NoiseMode::none).value("poisson", NoiseMode::poisson);
    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("voltage", &SynthConfig::voltage)
        .def_readwrite("temperature", &SynthConfig::temperature)
        .def_readwrite("model", &SynthConfig::model)
        .def_readwrite("z0", &SynthConfig::z0)
        .def_readwrite("z1", &SynthConfig::z1)
        .def_readwrite("n_steps", &SynthConfig::n_steps)
        .def_readwrite("tunneling_decay", &SynthConfig::tunneling_decay)
        .def_readwrite("contact_g", &SynthConfig::contact_g)
        .def_readwrite("start_g", &SynthConfig::start_g)
        .def_readwrite("bin_width", &SynthConfig::bin_width)
        .def_readwrite("energy_lo", &SynthConfig::energy_lo)
        .def_readwrite("energy_hi", &SynthConfig::energy_hi)
        .def_readwrite("base_rate", &SynthConfig::base_rate)
        .def_readwrite("noise_mode", &SynthConfig::noise_mode)
        .def_readwrite("seed", &SynthConfig::seed);
    m.def(
        "synth_trace",
        [](const SynthConfig& c) {
            std::vector<std::pair<double, double>> out;
            for (const auto& s : synth_trace(c))
                out.emplace_back(s.z, s.g);
            return out;
        },
        "config"_a, "List of (z, g) samples.");
    m.def("synth_map", &synth_map, "config"_a);
}
