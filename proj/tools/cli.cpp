#include "cli.hpp"

#include "shotnoise/analysis.hpp"
#include "shotnoise/constants.hpp"
#include "shotnoise/errors.hpp"
#include "shotnoise/format.hpp"
#include "shotnoise/noise.hpp"
#include "shotnoise/spectra.hpp"
#include "shotnoise/synth.hpp"
#include "shotnoise/transport.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace shotnoise::cli {

namespace {

using json = nlohmann::ordered_json;

double json_number(double v) {
    return round_to_output(v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read " + path);
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw IoError("cannot write " + out_path);
    f << text;
    if (!f)
        throw IoError("cannot write " + out_path);
}

Band parse_band(const std::string& text, const char* flag) {
    auto v = parse_decimal_list(text);
    if (v.size() != 2)
        throw ValidationError(std::string(flag) + " expects lo,hi");
    Band b{v[0], v[1]};
    b.validate();
    return b;
}

DecompositionModel model_from(const std::string& saturations, std::optional<std::size_t> atoms) {
    if (atoms)
        return DecompositionModel::atoms(*atoms);
    return DecompositionModel(parse_decimal_list(saturations));
}

// Each command fills one of these while CLI11 parses, then runs.
struct FanoCurveArgs {
    std::string saturations = "0.93,1.0";
    std::optional<std::size_t> atoms;
    double g_min = 0.0;
    double g_max = 0.0;
    std::size_t points = 500;
    std::string spacing = "log";
    std::string out;
};

struct NoiseArgs {
    std::string channels;
    double voltage = 0.0;
    double temperature = 0.0;
};

struct AnalyzeArgs {
    std::string map;
    double voltage = 0.0;
    std::string band_1e;
    std::string band_2e;
    std::string norm_window;
    std::string out;
};

struct FitArgs {
    std::string yields;
    double voltage = 0.0;
    std::string saturations = "0.93,1.0";
    std::optional<std::size_t> atoms;
    double t_min = 1.0;
    double t_max = 10000.0;
};

struct SimulateArgs {
    std::string config;
    std::optional<double> voltage, temperature, z_min, z_max, decay, contact_g, start_g, bin_width, e_min,
        e_max, base_rate;
    std::optional<std::string> saturations, noise;
    std::optional<std::size_t> atoms, steps;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct McFanoArgs {
    std::string channels;
    std::uint64_t attempts = 1000000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

void cmd_fano_curve(const FanoCurveArgs& a, std::ostream& out) {
    Spacing spacing;
    if (a.spacing == "log")
        spacing = Spacing::log;
    else if (a.spacing == "linear")
        spacing = Spacing::linear;
    else
        throw ValidationError("--spacing must be log or linear");
    auto curve = fano_curve(model_from(a.saturations, a.atoms), a.g_min, a.g_max, a.points, spacing);
    std::string csv = "conductance_G0,fano\n";
    for (const auto& p : curve)
        csv += format_number(p.g) + "," + format_number(p.fano) + "\n";
    emit(csv, a.out, out);
}

void cmd_noise(const NoiseArgs& a, std::ostream& out) {
    ChannelSet channels(parse_decimal_list(a.channels));
    NoiseEnvironment env{a.voltage, a.temperature};
    env.validate();
    const double current = total_transmission(channels) * constants::G0 * std::abs(a.voltage);
    json j;
    j["fano"] = json_number(fano(channels));
    j["schottky"] = json_number(schottky(current).value);
    j["shot_noise"] = json_number(shot_noise(channels, current).value);
    j["thermal_noise"] = json_number(thermal_noise(channels, env).value);
    if (a.voltage == 0.0 && a.temperature == 0.0)
        j["normalized_yield"] = nullptr;
    else
        j["normalized_yield"] = json_number(normalized_yield(channels, env));
    out << j.dump(2) << '\n';
}

void cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    const std::string text = read_file(a.map);
    const SpectralMap map = parse_map(text);
    if (!(a.voltage > 0.0))
        throw ValidationError("--voltage must be positive");
    auto bands = default_bands(a.voltage);
    if (!a.band_1e.empty())
        bands.one_electron = parse_band(a.band_1e, "--band-1e");
    if (!a.band_2e.empty())
        bands.two_electron = parse_band(a.band_2e, "--band-2e");
    NormWindow window;
    if (!a.norm_window.empty()) {
        auto v = parse_decimal_list(a.norm_window);
        if (v.size() != 2)
            throw ValidationError("--norm-window expects lo,hi");
        window = {v[0], v[1]};
    }
    auto curve = yield_curve(map, a.voltage, bands.one_electron, bands.two_electron, window);
    emit(serialize_yield_curve(curve), a.out, out);
}

void cmd_fit_temperature(const FitArgs& a, std::ostream& out) {
    if (!(a.t_min > 0.0 && a.t_min < a.t_max))
        throw ValidationError("temperature bounds need 0 < --t-min < --t-max");
    const auto model = model_from(a.saturations, a.atoms);
    const auto curve = parse_yield_curve(read_file(a.yields), a.voltage);
    auto fit = fit_temperature(curve, model, a.voltage, {a.t_min, a.t_max});
    json j;
    j["temperature"] = json_number(fit.temperature);
    j["residual_sum_squares"] = json_number(fit.residual_sum_squares);
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    out << j.dump(2) << '\n';
}

SynthConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ValidationError("config must be a JSON object");
    SynthConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "voltage")
                c.voltage = value.get<double>();
            else if (key == "temperature")
                c.temperature = value.get<double>();
            else if (key == "saturations")
                c.model = DecompositionModel(value.get<std::vector<double>>());
            else if (key == "atoms")
                c.model = DecompositionModel::atoms(value.get<std::size_t>());
            else if (key == "z_range") {
                auto z = value.get<std::vector<double>>();
                if (z.size() != 2)
                    throw ValidationError("z_range expects [z0, z1]");
                c.z0 = z[0];
                c.z1 = z[1];
            } else if (key == "n_steps")
                c.n_steps = value.get<std::size_t>();
            else if (key == "tunneling_decay")
                c.tunneling_decay = value.get<double>();
            else if (key == "contact_g")
                c.contact_g = value.get<double>();
            else if (key == "start_g")
                c.start_g = value.get<double>();
            else if (key == "bin_width")
                c.bin_width = value.get<double>();
            else if (key == "energy_range") {
                auto e = value.get<std::vector<double>>();
                if (e.size() != 2)
                    throw ValidationError("energy_range expects [lo, hi]");
                c.energy_lo = e[0];
                c.energy_hi = e[1];
            } else if (key == "base_rate")
                c.base_rate = value.get<double>();
            else if (key == "noise_mode")
                c.noise_mode = parse_noise_mode(value.get<std::string>());
            else if (key == "seed")
                c.seed = value.get<std::uint64_t>();
            else
                throw ValidationError("unknown config key \"" + key + "\"");
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config has a wrongly typed value: ") + e.what());
    }
    return c;
}

void cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    SynthConfig c = a.config.empty() ? SynthConfig{} : config_from_json(read_file(a.config));
    if (a.voltage) c.voltage = *a.voltage;
    if (a.temperature) c.temperature = *a.temperature;
    if (a.saturations) c.model = DecompositionModel(parse_decimal_list(*a.saturations));
    if (a.atoms) c.model = DecompositionModel::atoms(*a.atoms);
    if (a.z_min) c.z0 = *a.z_min;
    if (a.z_max) c.z1 = *a.z_max;
    if (a.steps) c.n_steps = *a.steps;
    if (a.decay) c.tunneling_decay = *a.decay;
    if (a.contact_g) c.contact_g = *a.contact_g;
    if (a.start_g) c.start_g = *a.start_g;
    if (a.bin_width) c.bin_width = *a.bin_width;
    if (a.e_min) c.energy_lo = *a.e_min;
    if (a.e_max) c.energy_hi = *a.e_max;
    if (a.base_rate) c.base_rate = *a.base_rate;
    if (a.noise) c.noise_mode = parse_noise_mode(*a.noise);
    if (a.seed) c.seed = *a.seed;
    emit(serialize_map(synth_map(c)), a.out, out);
}

void cmd_mc_fano(const McFanoArgs& a, std::ostream& out) {
    ChannelSet channels(parse_decimal_list(a.channels));
    auto mc = mc_fano(channels, a.attempts, a.seed, a.threads);
    json j;
    j["estimate"] = json_number(mc.estimate);
    j["std_error"] = json_number(mc.std_error);
    j["closed_form"] = json_number(fano(channels));
    out << j.dump(2) << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shot-noise and STM-luminescence yield toolkit", "shotnoise"};
    app.require_subcommand(1);

    FanoCurveArgs fc;
    auto* fano_cmd = app.add_subcommand("fano-curve", "Fano factor versus conductance (CSV)");
    auto* fc_sat = fano_cmd->add_option("--saturations", fc.saturations, "channel saturations, e.g. 0.93,1.0");
    fano_cmd->add_option("--atoms", fc.atoms, "multi-atom preset instead of --saturations")->excludes(fc_sat);
    fano_cmd->add_option("--g-min", fc.g_min, "lowest conductance (G0)")->required();
    fano_cmd->add_option("--g-max", fc.g_max, "highest conductance (G0)")->required();
    fano_cmd->add_option("--points", fc.points, "number of samples");
    fano_cmd->add_option("--spacing", fc.spacing, "log or linear");
    fano_cmd->add_option("--out", fc.out, "output file (default stdout)");

    NoiseArgs nz;
    auto* noise_cmd = app.add_subcommand("noise", "Noise densities of a channel set (JSON)");
    noise_cmd->add_option("--channels", nz.channels, "transmissions, e.g. 0.93,0.07")->required();
    noise_cmd->add_option("--voltage", nz.voltage, "bias (V)")->required();
    noise_cmd->add_option("--temperature", nz.temperature, "electron temperature (K)");

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Yield curve of a spectral map (CSV)");
    analyze_cmd->add_option("--map", an.map, "spectral-map CSV")->required();
    analyze_cmd->add_option("--voltage", an.voltage, "bias (V)")->required();
    analyze_cmd->add_option("--band-1e", an.band_1e, "1e band lo,hi (eV)");
    analyze_cmd->add_option("--band-2e", an.band_2e, "2e band lo,hi (eV)");
    analyze_cmd->add_option("--norm-window", an.norm_window, "normalization window g_lo,g_hi (G0)");
    analyze_cmd->add_option("--out", an.out, "output file (default stdout)");

    FitArgs ft;
    auto* fit_cmd = app.add_subcommand("fit-temperature", "Fit the electron temperature to a yield CSV (JSON)");
    fit_cmd->add_option("--yields", ft.yields, "yield-curve CSV")->required();
    fit_cmd->add_option("--voltage", ft.voltage, "bias (V)")->required();
    auto* ft_sat = fit_cmd->add_option("--saturations", ft.saturations, "channel saturations");
    fit_cmd->add_option("--atoms", ft.atoms, "multi-atom preset")->excludes(ft_sat);
    fit_cmd->add_option("--t-min", ft.t_min, "lower temperature bound (K)");
    fit_cmd->add_option("--t-max", ft.t_max, "upper temperature bound (K)");

    SimulateArgs sm;
    auto* sim_cmd = app.add_subcommand("simulate", "Synthetic spectral map (CSV)");
    sim_cmd->add_option("--config", sm.config, "JSON config file; flags override it");
    sim_cmd->add_option("--voltage", sm.voltage, "bias (V)");
    sim_cmd->add_option("--temperature", sm.temperature, "electron temperature (K)");
    auto* sm_sat = sim_cmd->add_option("--saturations", sm.saturations, "channel saturations");
    sim_cmd->add_option("--atoms", sm.atoms, "multi-atom preset")->excludes(sm_sat);
    sim_cmd->add_option("--z-min", sm.z_min, "start displacement (nm)");
    sim_cmd->add_option("--z-max", sm.z_max, "end displacement (nm)");
    sim_cmd->add_option("--steps", sm.steps, "number of spectra");
    sim_cmd->add_option("--decay", sm.decay, "tunneling decay length (nm)");
    sim_cmd->add_option("--contact-g", sm.contact_g, "jump-to-contact conductance (G0)");
    sim_cmd->add_option("--start-g", sm.start_g, "conductance at the start (G0)");
    sim_cmd->add_option("--bin-width", sm.bin_width, "energy bin width (eV)");
    sim_cmd->add_option("--e-min", sm.e_min, "first bin center (eV)");
    sim_cmd->add_option("--e-max", sm.e_max, "last bin center (eV)");
    sim_cmd->add_option("--base-rate", sm.base_rate, "counts/s per A at unit yield");
    sim_cmd->add_option("--noise", sm.noise, "none or poisson");
    sim_cmd->add_option("--seed", sm.seed, "RNG seed");
    sim_cmd->add_option("--out", sm.out, "output file (default stdout)");

    McFanoArgs mc;
    auto* mc_cmd = app.add_subcommand("mc-fano", "Monte Carlo Fano factor (JSON)");
    mc_cmd->add_option("--channels", mc.channels, "transmissions")->required();
    mc_cmd->add_option("--attempts", mc.attempts, "number of attempts (>= 1000)");
    mc_cmd->add_option("--seed", mc.seed, "RNG seed");
    mc_cmd->add_option("--threads", mc.threads, "worker threads (0 = all cores)");

    std::vector<const char*> argv{"shotnoise"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }

    try {
        if (fano_cmd->parsed())
            cmd_fano_curve(fc, out);
        else if (noise_cmd->parsed())
            cmd_noise(nz, out);
        else if (analyze_cmd->parsed())
            cmd_analyze(an, out);
        else if (fit_cmd->parsed())
            cmd_fit_temperature(ft, out);
        else if (sim_cmd->parsed())
            cmd_simulate(sm, out);
        else if (mc_cmd->parsed())
            cmd_mc_fano(mc, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
    return exit_ok;
}

} // namespace shotnoise::cli
