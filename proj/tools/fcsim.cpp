// Copyright 2026 The fcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fcsim command-line front end. Every subcommand writes one structured
// document (JSON or schema-tagged CSV) to --output or stdout; diagnostics go
// to stderr. Exit codes: 0 success, 1 compute failure, 2 bad configuration.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fcsim/config.hpp"
#include "fcsim/fcsim.hpp"

namespace {

using namespace fcsim;

constexpr int kExitCompute = 1;
constexpr int kExitConfig = 2;
constexpr std::string_view kHardwareSchema = "fcsim.hardware/1";
constexpr std::string_view kResourcesSchema = "fcsim.resources/1";

struct RunConfig {
    std::string molecule;
    std::string initial = "0,0";
    std::string state;
    int n_max = 10;
    int cutoff = 0;  // 0: command default
    bool exact = false;
    double eta = 0.0;
    double fwhm = 10.0;
    std::string scheme = "ideal";
    std::int64_t shots = 0;
    std::int64_t runs = 0;
    std::optional<std::uint64_t> seed;
    double t_a = 1.0, t_b = 1.0, f_a = 0.0, f_b = 0.0;
    bool correct = false;
    double flip = 0.0;
    std::string noise_file;
    std::optional<Json> noise_inline;
    bool noiseless = false;
    double loss_scale = 1.0, kerr_scale = 1.0;
    double step_us = 0.0;
    std::vector<std::string> files;
    CircuitParams circuit;
    int modes = 0;
    double epsilon = 1e-3;
    std::string config;
    std::string output;
};

std::pair<int, int> parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ConfigError(std::string(what) + ": expected n,m but got '" + s + "'");
    const auto a = parse_integer(s.substr(0, comma), what);
    const auto b = parse_integer(s.substr(comma + 1), what);
    if (a < 0 || b < 0 || a > 1000 || b > 1000)
        throw ConfigError(std::string(what) + ": occupations must lie in [0, 1000]");
    return {static_cast<int>(a), static_cast<int>(b)};
}

MolecularTransition require_molecule(const RunConfig& c) {
    if (c.molecule.empty()) throw ConfigError("--molecule is required");
    return load_molecule(c.molecule);
}

int cutoff_or(const RunConfig& c, int fallback) {
    const int cutoff = c.cutoff > 0 ? c.cutoff : fallback;
    if (c.n_max >= cutoff)
        throw ConfigError("--nmax (" + std::to_string(c.n_max) + ") must be below the cutoff (" +
                          std::to_string(cutoff) + ")");
    return cutoff;
}

DetectorModel detector(const RunConfig& c) {
    DetectorModel m{c.t_a, c.t_b, c.f_a, c.f_b};
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return m;
}

JointDistribution molecule_distribution(const RunConfig& c) {
    const auto t = require_molecule(c);
    const auto [n, m] = parse_pair(c.initial, "--initial");
    const auto p = doktorov_params(t);
    if (c.exact) return fcf_distribution_exact(p, n, m, c.n_max);
    return fcf_distribution(p, n, m, c.n_max, cutoff_or(c, kDefaultCutoff));
}

void cmd_derive(const RunConfig& c, std::ostream& os) {
    const auto t = require_molecule(c);
    auto p = doktorov_params(t);
    if (c.eta != 0.0) p = p.rescaled(c.eta);
    Json j = params_to_json(p);
    j["molecule"] = t.label;
    os << j.dump(2) << '\n';
}

void cmd_fcf(const RunConfig& c, std::ostream& os) { write_fcf_csv(os, molecule_distribution(c)); }

void cmd_spectrum(const RunConfig& c, std::ostream& os) {
    const auto t = require_molecule(c);
    if (t.modes() != 2) throw ConfigError("spectrum: two-mode molecule required");
    if (!(c.fwhm > 0.0)) throw ConfigError("--fwhm must be positive");
    const auto s = spectrum(molecule_distribution(c), t.nu_post[0], t.nu_post[1], c.fwhm);
    write_spectrum_csv(os, s, c.fwhm);
}

void cmd_sample(const RunConfig& c, std::ostream& os) {
    if (!c.seed) throw ConfigError("sample: --seed is required");
    if (!c.state.empty() && !c.molecule.empty())
        throw ConfigError("sample: give either --state or --molecule, not both");
    const bool fock = !c.state.empty();
    const auto [n, m] = parse_pair(fock ? c.state : c.initial, fock ? "--state" : "--initial");

    if (c.scheme == "binary") {
        if (c.shots < 1) throw ConfigError("sample: --shots must be positive");
        const int cutoff = c.cutoff > 0 ? c.cutoff : kDefaultCutoff;
        if (cutoff <= kBinaryNMax) throw ConfigError("sample: binary scheme needs --cutoff of at least 16");
        const StateVector psi = fock ? StateVector::fock(cutoff, cutoff, n, m)
                                     : doktorov_state(doktorov_params(require_molecule(c)), n, m, cutoff);
        write_counts_csv(os, sample_binary_decomposition(psi, c.shots, *c.seed, c.flip));
        return;
    }

    if (fock && (n > c.n_max || m > c.n_max)) throw ConfigError("sample: --state outside the --nmax box");
    const JointDistribution dist = fock ? JointDistribution::point_mass(c.n_max, n, m)
                                        : molecule_distribution(c);
    if (c.scheme == "ideal") {
        if (c.shots < 1) throw ConfigError("sample: --shots must be positive");
        write_counts_csv(os, sample_ideal(dist, c.shots, *c.seed));
    } else if (c.scheme == "single-bit") {
        if (c.runs < 1) throw ConfigError("sample: single-bit scheme needs a positive --runs");
        const DetectorModel model = detector(c);
        const CountMatrix counts = simulate_single_bit(dist, model, c.runs, *c.seed);
        std::optional<Eigen::MatrixXd> corrected;
        if (c.correct) corrected = correct_readout(estimate(counts).probs, model);
        write_counts_csv(os, counts, corrected);
    } else {
        throw ConfigError("sample: unknown scheme '" + c.scheme + "'");
    }
}

void cmd_noise(const RunConfig& c, std::ostream& os) {
    const auto t = require_molecule(c);
    const auto [n, m] = parse_pair(c.initial, "--initial");
    NoiseParams noise;
    if (c.noise_inline) noise = noise_from_json(*c.noise_inline);
    if (!c.noise_file.empty()) noise = noise_from_json(load_json(c.noise_file));
    if (c.noiseless) noise = noise.noiseless();
    if (c.loss_scale != 1.0) noise = noise.loss_scaled(c.loss_scale);
    if (c.kerr_scale != 1.0) noise = noise.kerr_scaled(c.kerr_scale);
    if (c.step_us != 0.0) noise.step_us = c.step_us;
    try {
        noise.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const NoisyFcf r = noisy_fcf(t, n, m, noise, c.n_max, cutoff_or(c, kDefaultNoiseCutoff));
    write_csv_preamble(os, kFcfSchema,
                       {{"n_max", std::to_string(c.n_max)},
                        {"leakage", format_double(1.0 - r.noisy.total())},
                        {"distance", format_double(r.distance)}},
                       {"n_prime", "m_prime", "probability", "ideal"});
    for (int a = 0; a <= c.n_max; ++a)
        for (int b = 0; b <= c.n_max; ++b)
            os << a << ',' << b << ',' << format_double(r.noisy(a, b)) << ',' << format_double(r.ideal(a, b))
               << '\n';
}

// FCF, noise and counts files all carry n_prime, m_prime, probability.
JointDistribution read_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    const CsvTable t = read_csv(in);
    if (t.schema() != kFcfSchema && t.schema() != kCountsSchema)
        throw ConfigError(path + ": unsupported schema '" + t.schema() + "'");
    const auto n_max = parse_integer(t.meta_value("n_max"), "n_max");
    if (n_max < 0 || n_max > 4096) throw ConfigError(path + ": n_max out of range");
    JointDistribution d(static_cast<int>(n_max));
    const auto cn = t.column("n_prime"), cm = t.column("m_prime"), cp = t.column("probability");
    for (const auto& row : t.rows) {
        const auto a = parse_integer(row[cn], "n_prime"), b = parse_integer(row[cm], "m_prime");
        if (a < 0 || b < 0 || a > n_max || b > n_max)
            throw ConfigError(path + ": cell (" + row[cn] + "," + row[cm] + ") outside n_max");
        d(static_cast<int>(a), static_cast<int>(b)) = parse_double(row[cp], "probability");
    }
    return d;
}

void cmd_distance(const RunConfig& c, std::ostream& os) {
    if (c.files.size() != 2) throw ConfigError("distance: exactly two files required");
    const auto p = read_distribution(c.files[0]);
    const auto q = read_distribution(c.files[1]);
    if (p.n_max != q.n_max)
        throw ConfigError("distance: n_max differs (" + std::to_string(p.n_max) + " vs " +
                          std::to_string(q.n_max) + ")");
    os << format_double(distance(p, q)) << '\n';
}

void cmd_hardware(const RunConfig& c, std::ostream& os) {
    const CircuitParams& p = c.circuit;
    if (p.delta_a == 0.0 || p.delta_b == 0.0 || p.k_c == 0.0)
        throw ConfigError("hardware: --delta-a, --delta-b and --k-c are required and nonzero");
    p.check_dispersive();
    write_csv_preamble(os, kHardwareSchema, {}, {"quantity", "raw", "substituted"});
    auto row = [&](const char* name, DualForm v) {
        os << name << ',' << format_double(v.raw) << ',' << format_double(v.substituted) << '\n';
    };
    auto single = [&](const char* name, double v) { row(name, {v, v}); };
    row("chi_a", chi(p, Cavity::a));
    row("chi_b", chi(p, Cavity::b));
    row("self_kerr_a", self_kerr(p, Cavity::a));
    row("self_kerr_b", self_kerr(p, Cavity::b));
    row("cross_kerr", cross_kerr(p));
    single("chi_prime_a", chi_prime(p, Cavity::a));
    single("chi_prime_b", chi_prime(p, Cavity::b));
    const bool pumped = p.omega_1 != 0.0 && p.omega_2 != 0.0;
    if (pumped) {
        row("g_beamsplitter", g_beamsplitter(p));
        row("g_squeeze_a", g_squeeze(p, Cavity::a));
        row("g_squeeze_b", g_squeeze(p, Cavity::b));
        if (p.two_photon_detuning != 0.0) single("driven_kerr_shift", driven_kerr_shift(p));
    }
}

void cmd_resources(const RunConfig& c, std::ostream& os) {
    int modes = c.modes;
    if (!c.molecule.empty()) {
        if (modes != 0) throw ConfigError("resources: give either --modes or --molecule, not both");
        modes = static_cast<int>(require_molecule(c).modes());
    }
    if (modes < 1) throw ConfigError("resources: --modes or --molecule is required");
    const CircuitSize size = circuit_size(modes);
    const ResourceEstimate est = resource_estimate(modes, c.n_max, c.epsilon);
    write_csv_preamble(os, kResourcesSchema,
                       {{"n_max", std::to_string(c.n_max)}, {"epsilon", format_double(c.epsilon)}},
                       {"quantity", "value"});
    os << "modes," << modes << '\n'
       << "squeezers," << size.squeezers << '\n'
       << "displacers," << size.displacers << '\n'
       << "beamsplitters," << size.beamsplitters << '\n'
       << "qubits," << est.qubits << '\n'
       << "gate_scale," << format_double(est.gate_scale) << '\n';
}

// Command-line tokens for config entries. Keys are long option names with
// '_' for '-'; an entry whose option was also given on the command line is a
// conflict.
std::vector<std::string> config_tokens(CLI::App& sub, RunConfig& c) {
    const Json j = load_json(c.config);
    if (!j.is_object()) throw ConfigError(c.config + ": expected a JSON object");
    std::vector<std::string> out;
    for (const auto& [key, value] : j.items()) {
        std::string name = key;
        for (char& ch : name)
            if (ch == '_') ch = '-';
        const CLI::Option* opt = sub.get_option_no_throw("--" + name);
        if (!opt || name == "config")
            throw ConfigError(c.config + ": unknown key '" + key + "' for '" + sub.get_name() + "'");
        if (opt->count() > 0)
            throw ConfigError(c.config + ": '" + key + "' conflicts with --" + name + " on the command line");
        if (key == "noise" && value.is_object()) {
            c.noise_inline = value;
            continue;
        }
        if (opt->get_expected_max() == 0) {
            if (!value.is_boolean()) throw ConfigError(c.config + ": '" + key + "' must be true or false");
            if (value.get<bool>()) out.push_back("--" + name);
            continue;
        }
        auto scalar = [&](const Json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            if (v.is_number()) return format_double(v.get<double>());
            throw ConfigError(c.config + ": '" + key + "' has an unsupported value");
        };
        std::string text;
        if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i) text += (i ? "," : "") + scalar(value[i]);
        } else {
            text = scalar(value);
        }
        out.push_back("--" + name);
        out.push_back(text);
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Franck-Condon profiles on a two-cavity bosonic simulator", "fcsim"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_output = [&](CLI::App* s) {
        s->add_option("-o,--output", c.output, "Output path (default: stdout)");
        s->add_option("--config", c.config, "JSON file of option values; keys are long option names");
    };
    auto add_molecule = [&](CLI::App* s) {
        s->add_option("--molecule", c.molecule, "Preset (h2o, o3, no2, so2) or molecule JSON file");
    };
    auto add_box = [&](CLI::App* s) {
        s->add_option("--initial", c.initial, "Initial vibrational state n,m")->capture_default_str();
        s->add_option("--nmax", c.n_max, "Largest final occupation per mode")->capture_default_str();
        s->add_option("--cutoff", c.cutoff, "Fock cutoff per mode");
    };

    auto* derive = app.add_subcommand("derive", "Doktorov parameters of a molecule (JSON)");
    add_molecule(derive);
    derive->add_option("--eta", c.eta, "Rescale to this frequency scale instead of the optimum");
    add_output(derive);

    auto* fcf = app.add_subcommand("fcf", "Franck-Condon distribution over the [0,nmax]^2 box");
    add_molecule(fcf);
    add_box(fcf);
    fcf->add_flag("--exact", c.exact, "Use the Gaussian recurrence instead of the truncated circuit");
    add_output(fcf);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Lorentzian-broadened stick spectrum");
    add_molecule(spectrum_cmd);
    add_box(spectrum_cmd);
    spectrum_cmd->add_flag("--exact", c.exact, "Use the Gaussian recurrence instead of the truncated circuit");
    spectrum_cmd->add_option("--fwhm", c.fwhm, "Line width in cm^-1")->capture_default_str();
    add_output(spectrum_cmd);

    auto* sample = app.add_subcommand("sample", "Simulated photon-number measurement counts");
    add_molecule(sample);
    add_box(sample);
    sample->add_option("--state", c.state, "Sample a Fock state n,m instead of a molecule");
    sample->add_option("--scheme", c.scheme, "ideal, single-bit or binary")
        ->check(CLI::IsMember({"ideal", "single-bit", "binary"}))
        ->capture_default_str();
    sample->add_option("--shots", c.shots, "Shots (ideal, binary)");
    sample->add_option("--runs", c.runs, "Runs per cell (single-bit)");
    sample->add_option("--seed", c.seed, "Random seed (required)");
    sample->add_option("--t-a", c.t_a, "Ancilla A true-positive probability")->capture_default_str();
    sample->add_option("--t-b", c.t_b, "Ancilla B true-positive probability")->capture_default_str();
    sample->add_option("--f-a", c.f_a, "Ancilla A false-positive probability")->capture_default_str();
    sample->add_option("--f-b", c.f_b, "Ancilla B false-positive probability")->capture_default_str();
    sample->add_flag("--correct", c.correct, "Add readout-corrected probabilities (single-bit)");
    sample->add_option("--flip", c.flip, "Recorded-bit flip probability (binary)")->capture_default_str();
    add_output(sample);

    auto* noise = app.add_subcommand("noise", "Master-equation distribution and its distance to the ideal");
    add_molecule(noise);
    add_box(noise);
    noise->add_option("--noise", c.noise_file, "JSON file of noise-parameter overrides");
    noise->add_flag("--noiseless", c.noiseless, "Disable Kerr and loss");
    noise->add_option("--loss-scale", c.loss_scale, "Multiply every loss rate")->capture_default_str();
    noise->add_option("--kerr-scale", c.kerr_scale, "Multiply every Kerr coefficient")->capture_default_str();
    noise->add_option("--step", c.step_us, "Integrator step in microseconds");
    add_output(noise);

    auto* dist = app.add_subcommand("distance", "Half l1 distance between two distribution files");
    dist->add_option("files", c.files, "Two FCF, noise or counts CSV files")->expected(2);
    add_output(dist);

    auto* hw = app.add_subcommand("hardware", "Dispersive shifts, pump rates and Kerr terms");
    hw->add_option("--g-a", c.circuit.g_a, "Cavity A coupling");
    hw->add_option("--g-b", c.circuit.g_b, "Cavity B coupling");
    hw->add_option("--delta-a", c.circuit.delta_a, "Cavity A detuning from the coupler");
    hw->add_option("--delta-b", c.circuit.delta_b, "Cavity B detuning from the coupler");
    hw->add_option("--k-c", c.circuit.k_c, "Coupler anharmonicity");
    hw->add_option("--omega-1", c.circuit.omega_1, "Pump 1 amplitude");
    hw->add_option("--omega-2", c.circuit.omega_2, "Pump 2 amplitude");
    hw->add_option("--delta-1", c.circuit.delta_1, "Pump 1 detuning from the coupler");
    hw->add_option("--delta-2", c.circuit.delta_2, "Pump 2 detuning from the coupler");
    hw->add_option("--two-photon-detuning", c.circuit.two_photon_detuning, "Detuning from the 0-2 resonance");
    hw->add_option("--dispersive-threshold", c.circuit.dispersive_threshold, "|g/delta| warning level")
        ->capture_default_str();
    add_output(hw);

    auto* res = app.add_subcommand("resources", "Circuit size and qubit-encoding estimate");
    add_molecule(res);
    res->add_option("--modes", c.modes, "Number of vibrational modes");
    res->add_option("--nmax", c.n_max, "Occupation bound (power of two)");
    res->add_option("--epsilon", c.epsilon, "Target precision")->capture_default_str();
    add_output(res);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
        CLI::App* sub = app.get_subcommands().front();
        if (!c.config.empty()) {
            const auto extra = config_tokens(*sub, c);
            if (!extra.empty()) {
                auto inline_noise = c.noise_inline;
                args.insert(args.end(), extra.begin(), extra.end());
                app.clear();
                c = RunConfig{};
                app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
                c.noise_inline = inline_noise;
            }
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "resources" && sub->count("--nmax") == 0) c.n_max = 16;
    std::ostringstream out;
    if (name == "derive") cmd_derive(c, out);
    else if (name == "fcf") cmd_fcf(c, out);
    else if (name == "spectrum") cmd_spectrum(c, out);
    else if (name == "sample") cmd_sample(c, out);
    else if (name == "noise") cmd_noise(c, out);
    else if (name == "distance") cmd_distance(c, out);
    else if (name == "hardware") cmd_hardware(c, out);
    else cmd_resources(c, out);

    if (c.output.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(c.output, std::ios::binary);
        if (!file || !(file << out.str())) throw ConfigError("cannot write '" + c.output + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    fcsim::warning_handler() = [](std::string_view m) { std::cerr << "fcsim: warning: " << m << '\n'; };
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {  // ConfigError included
        std::cerr << "fcsim: error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "fcsim: error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "fcsim: error: " << e.what() << '\n';
        return kExitCompute;
    }
}
