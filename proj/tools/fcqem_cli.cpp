// Copyright 2026 The FCQEM Authors
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

// Command-line driver: simulated sweeps, post-processing of recorded
// measurements, frame-simulator scaling runs, distribution dumps and exact
// ground energies.
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
// 3 input error, 4 capacity error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fcqem.hpp"
#include "json.hpp"

#ifndef FCQEM_VERSION
#define FCQEM_VERSION "unknown"
#endif

namespace {

using namespace fcqem;
using nlohmann::json;

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kInput = 3, kCapacity = 4 };

// Invalid or conflicting options, detected before any computation.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Input files that parse but cannot be used as requested.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string subcommand;
    // Hamiltonian source.
    std::string model;
    std::string hamiltonian;
    std::size_t n = 10;
    double j = 1.0;
    double h = 0.0;
    bool periodic = false;
    // State preparation and noise.
    std::string trial = "neel";
    std::string rotate_y;
    std::string noise;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    // Sweep ranges.
    std::string h_range, theta_range, p_range;
    std::string correction = "per-basis";
    bool vd = false;
    // mitigate
    std::string measurements, second;
    std::string preferred;
    // scale
    std::vector<std::size_t> n_list;
    std::vector<double> rates;
    double bias = 10.0;
    std::string placement = "every-layer";
    // dump-dist
    std::string basis;
    double threshold = 0.005;
    // common
    std::string output = "-";
    unsigned threads = 0;
    bool timing = false;
};

// ---- Parsing helpers -------------------------------------------------------

// "a:b:step" with optional pi literals; empty when b < a.
std::vector<double> parse_range(const std::string &text, const char *flag) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string::npos) {
            break;
        }
        start = colon + 1;
    }
    if (parts.size() != 3) {
        throw ConfigError(std::string(flag) + " expects start:stop:step, got \"" + text + "\"");
    }
    double a = 0, b = 0, step = 0;
    try {
        a = parse_angle(parts[0]);
        b = parse_angle(parts[1]);
        step = parse_angle(parts[2]);
    } catch (const ParseError &e) {
        throw ConfigError(std::string(flag) + ": " + e.what());
    }
    if (!(step > 0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ConfigError(std::string(flag) + " needs finite bounds and a positive step");
    }
    std::vector<double> out;
    const double slack = 1e-9 * step;
    for (std::size_t k = 0;; ++k) {
        const double v = a + static_cast<double>(k) * step;
        if (v > b + slack) {
            break;
        }
        out.push_back(v);
    }
    return out;
}

// Comma-separated key=value list, e.g. "readout=0.03,depol-2q=0.01".
NoiseModel parse_noise(const std::string &text) {
    NoiseModel nm;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        start = comma == std::string::npos ? text.size() : comma + 1;
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        double v = 0;
        if (eq == std::string::npos || !detail::parse_double(std::string_view(item).substr(eq + 1), v)) {
            throw ConfigError("noise entry \"" + item + "\" is not key=value");
        }
        const std::string key = item.substr(0, eq);
        if (key == "readout") {
            nm.readout_flip = v;
        } else if (key == "depol-global") {
            nm.global_depolarizing = v;
        } else if (key == "depol-1q") {
            nm.depolarizing_1q = v;
        } else if (key == "depol-2q") {
            nm.depolarizing_2q = v;
        } else if (key == "pauli-x") {
            nm.pauli_x = v;
        } else if (key == "pauli-y") {
            nm.pauli_y = v;
        } else if (key == "pauli-z") {
            nm.pauli_z = v;
        } else {
            throw ConfigError("unknown noise key \"" + key +
                              "\" (readout, depol-global, depol-1q, depol-2q, pauli-x, pauli-y, pauli-z)");
        }
    }
    return nm;
}

// "q=3" -> 3.
std::size_t parse_rotate_y(const std::string &text) {
    std::size_t q = 0;
    if (text.rfind("q=", 0) != 0 || !detail::parse_size(std::string_view(text).substr(2), q)) {
        throw ConfigError("--rotate-y expects q=<qubit>, got \"" + text + "\"");
    }
    return q;
}

FcqemConfig correction_config(const Options &o) {
    FcqemConfig cfg;
    if (o.correction == "global-z") {
        cfg.normalization = Normalization::GlobalZ;
    } else if (o.correction != "per-basis") {
        throw ConfigError("--correction must be per-basis or global-z");
    }
    return cfg;
}

// ---- Metadata and output ---------------------------------------------------

json config_json(const Options &o) {
    json c;
    c["subcommand"] = o.subcommand;
    c["seed"] = o.seed;
    auto hamiltonian_source = [&] {
        if (!o.hamiltonian.empty()) {
            c["hamiltonian"] = o.hamiltonian;
        } else {
            c["model"] = o.model;
            c["n"] = o.n;
            c["j"] = o.j;
            c["h"] = o.h;
            c["periodic"] = o.periodic;
        }
    };
    if (o.subcommand == "sweep") {
        hamiltonian_source();
        c["trial"] = o.trial;
        c["rotate-y"] = o.rotate_y;
        c["noise"] = o.noise;
        c["shots"] = o.shots;
        c["h-range"] = o.h_range;
        c["theta-range"] = o.theta_range;
        c["p-range"] = o.p_range;
        c["correction"] = o.correction;
        c["vd"] = o.vd;
    } else if (o.subcommand == "mitigate") {
        c["hamiltonian"] = o.hamiltonian;
        c["measurements"] = o.measurements;
        c["second"] = o.second;
        c["preferred"] = o.preferred;
    } else if (o.subcommand == "scale") {
        c["trial"] = o.trial;
        c["n-list"] = o.n_list;
        c["rates"] = o.rates;
        c["shots"] = o.shots;
        c["bias"] = o.bias;
        c["placement"] = o.placement;
    } else if (o.subcommand == "dump-dist") {
        if (o.measurements.empty()) {
            c["trial"] = o.trial;
            c["n"] = o.n;
            c["noise"] = o.noise;
            c["shots"] = o.shots;
        } else {
            c["measurements"] = o.measurements;
        }
        c["basis"] = o.basis;
        c["threshold"] = o.threshold;
    } else if (o.subcommand == "ground-state") {
        hamiltonian_source();
    }
    return c;
}

void add_metadata(CsvTable &t, const Options &o) {
    t.metadata = {{"tool", "fcqem_cli"},
                  {"version", FCQEM_VERSION},
                  {"seed", std::to_string(o.seed)},
                  {"config", config_json(o).dump()}};
}

json metadata_json(const Options &o) {
    return {{"tool", "fcqem_cli"}, {"version", FCQEM_VERSION}, {"seed", o.seed}, {"config", config_json(o)}};
}

void emit(const Options &o, const std::string &text) {
    if (o.output == "-") {
        std::cout << text << std::flush;
    } else {
        detail::write_file(o.output, text);
    }
}

// Runs `task(i)` for i in [0, count) on a pool of `threads` workers; the
// first exception (by index) is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)> &task) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

// ---- Shared model plumbing -------------------------------------------------

void check_hamiltonian_source(const Options &o) {
    if (o.model.empty() == o.hamiltonian.empty()) {
        throw ConfigError("give exactly one Hamiltonian source: --model tfim or --hamiltonian <file>");
    }
    if (!o.model.empty() && o.model != "tfim") {
        throw ConfigError("unknown model \"" + o.model + "\" (supported: tfim)");
    }
}

PauliSum model_hamiltonian(const Options &o, double field) {
    if (!o.hamiltonian.empty()) {
        return load_hamiltonian(o.hamiltonian);
    }
    return build_tfim(TfimSpec::chain(o.n, o.j, field, o.periodic));
}

Circuit trial_circuit(const Options &o, std::size_t n) {
    if (o.trial == "neel") {
        return neel_circuit(n);
    }
    Circuit c = parse_circuit(detail::read_file(o.trial), n);
    if (c.num_qubits() != n) {
        throw DimensionError("trial circuit uses " + std::to_string(c.num_qubits()) + " qubits, expected " +
                             std::to_string(n));
    }
    return c;
}

std::vector<Tpb> required_bases(const PauliSum &h) {
    auto bases = group_tpb(hamiltonian_powers(h, 4).union_weights()).bases();
    const Tpb z = Tpb::all_z(h.num_qubits());
    if (std::find(bases.begin(), bases.end(), z) == bases.end()) {
        bases.push_back(z);
    }
    return bases;
}

// ---- sweep -----------------------------------------------------------------

int cmd_sweep(const Options &o) {
    check_hamiltonian_source(o);
    const int ranges = !o.h_range.empty() + !o.theta_range.empty() + !o.p_range.empty();
    if (ranges != 1) {
        throw ConfigError("give exactly one of --h-range, --theta-range, --p-range");
    }
    if (!o.h_range.empty() && o.model.empty()) {
        throw ConfigError("--h-range needs --model tfim");
    }
    if (!o.theta_range.empty() && o.rotate_y.empty()) {
        throw ConfigError("--theta-range needs --rotate-y q=<qubit>");
    }
    const std::string param = !o.h_range.empty() ? "h" : !o.theta_range.empty() ? "theta" : "p";
    const auto values = parse_range(!o.h_range.empty()       ? o.h_range
                                    : !o.theta_range.empty() ? o.theta_range
                                                             : o.p_range,
                                    param == "h" ? "--h-range" : param == "theta" ? "--theta-range" : "--p-range");
    const NoiseModel base_noise = parse_noise(o.noise);
    const FcqemConfig cfg = correction_config(o);
    std::optional<std::size_t> rot_qubit;
    if (!o.rotate_y.empty()) {
        rot_qubit = parse_rotate_y(o.rotate_y);
    }

    // Inputs are loaded and sized before any simulation.
    const PauliSum h0 = model_hamiltonian(o, o.h);
    const std::size_t n = h0.num_qubits();
    if (n > kMaxDensityQubits) {
        throw CapacityError("sweep simulates density matrices of at most " + std::to_string(kMaxDensityQubits) +
                            " qubits, Hamiltonian has " + std::to_string(n));
    }
    const Circuit trial = trial_circuit(o, n);
    if (rot_qubit && *rot_qubit >= n) {
        throw ConfigError("--rotate-y qubit " + std::to_string(*rot_qubit) + " outside the " + std::to_string(n) +
                          "-qubit register");
    }
    base_noise.validate(n);
    if (param == "p") {
        for (double p : values) {
            if (!(p >= 0 && p <= 1)) {
                throw ConfigError("--p-range values must lie in [0, 1]");
            }
        }
    }
    const std::optional<double> fixed_exact =
        param == "h" ? std::nullopt : std::optional<double>(exact_ground_state(h0).energy);
    const std::optional<std::vector<Tpb>> fixed_bases =
        param == "h" ? std::nullopt : std::optional<std::vector<Tpb>>(required_bases(h0));

    std::vector<SweepRow> rows(values.size());
    parallel_for(values.size(), o.threads, [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        const double v = values[i];
        const PauliSum h = param == "h" ? model_hamiltonian(o, v) : h0;
        Circuit c = trial;
        if (rot_qubit) {
            c.rotate(GateKind::RY, *rot_qubit, param == "theta" ? v : 0.0);
        }
        NoiseModel nm = base_noise;
        if (param == "p") {
            nm.global_depolarizing = v;
        }
        const auto rho = run_noisy(c, nm);
        const auto bases = fixed_bases ? *fixed_bases : required_bases(h);
        auto ms = measure_all(rho, std::span<const Tpb>(bases), nm);
        if (o.shots > 0) {
            ms = sample_all(ms, o.shots, derive_stream(o.seed, "sweep", i));
        }
        SweepRow &r = rows[i];
        r.param = v;
        r.raw = raw_expectation(ms, h);
        const auto fc = fcqem_expectation(ms, h, cfg);
        r.fcqem = fc.value;
        r.fcqem_out_of_range = fc.exceeds_norm_bound;
        const auto q = qcm_from_measurements(ms, h);
        r.qcm = q.energy;
        r.qcm_status = to_string(q.status);
        const auto fq = qcm_with_fcqem(ms, h, cfg);
        r.fcqem_qcm = fq.energy;
        r.fcqem_qcm_status = to_string(fq.status);
        r.exact = fixed_exact ? *fixed_exact : exact_ground_state(h).energy;
        if (o.vd) {
            r.vd = vd_exact(rho, h);
        }
        if (o.timing) {
            std::fprintf(stderr, "%s=%g: %.3fs\n", param.c_str(), v,
                         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
    });
    CsvTable t = sweep_table(rows, param, o.vd);
    add_metadata(t, o);
    emit(o, t.str());
    return kOk;
}

// ---- mitigate --------------------------------------------------------------

json corrected_json(const std::function<CorrectedValue()> &f) {
    try {
        const auto cv = f();
        return {{"value", cv.value}, {"exceeds_norm_bound", cv.exceeds_norm_bound}};
    } catch (const DegenerateInputError &e) {
        return {{"error", e.what()}};
    }
}

json qcm_json(const std::function<QcmEstimate()> &f) {
    try {
        const auto e = f();
        return {{"energy", e.energy}, {"status", to_string(e.status)}};
    } catch (const MissingMeasurementError &e) {
        return {{"error", e.what()}, {"missing", e.missing_bases()}};
    } catch (const DegenerateInputError &e) {
        return {{"error", e.what()}};
    }
}

int cmd_mitigate(const Options &o) {
    if (o.hamiltonian.empty() || o.measurements.empty()) {
        throw ConfigError("mitigate needs --hamiltonian and --measurements");
    }
    const PauliSum h = load_hamiltonian(o.hamiltonian);
    const MeasurementSet ms = load_measurements(o.measurements);
    std::optional<MeasurementSet> second;
    if (!o.second.empty()) {
        second = load_measurements(o.second);
    }
    if (ms.num_qubits() != h.num_qubits() || (second && second->num_qubits() != h.num_qubits())) {
        throw DimensionError("measurement files and Hamiltonian disagree on the qubit count");
    }
    FcqemConfig per_basis;
    if (!o.preferred.empty()) {
        per_basis.preferred_basis = Tpb(o.preferred);
    }
    FcqemConfig global = per_basis;
    global.normalization = Normalization::GlobalZ;

    json out;
    out["metadata"] = metadata_json(o);
    out["raw"] = raw_expectation(ms, h);  // throws with the missing bases listed
    json fc, fq;
    fc["per_basis"] = corrected_json([&] { return fcqem_expectation(ms, h, per_basis); });
    fc["global_z"] = corrected_json([&] { return fcqem_expectation(ms, h, global); });
    fq["per_basis"] = qcm_json([&] { return qcm_with_fcqem(ms, h, per_basis); });
    fq["global_z"] = qcm_json([&] { return qcm_with_fcqem(ms, h, global); });
    if (second) {
        FcqemConfig two = per_basis;
        two.copy = CopyMode::TwoCopy;
        fc["two_copy"] = corrected_json([&] { return fcqem_expectation(ms, h, two, &*second); });
        fq["two_copy"] = qcm_json([&] { return qcm_with_fcqem(ms, h, two, &*second); });
    }
    out["fcqem"] = fc;
    out["qcm"] = qcm_json([&] { return qcm_from_measurements(ms, h); });
    out["fcqem_qcm"] = fq;
    emit(o, out.dump(2) + "\n");
    return kOk;
}

// ---- scale -----------------------------------------------------------------

int cmd_scale(const Options &o) {
    NoisePlacement placement = NoisePlacement::EveryLayer;
    if (o.placement == "before-measurement") {
        placement = NoisePlacement::BeforeMeasurement;
    } else if (o.placement != "every-layer") {
        throw ConfigError("--placement must be every-layer or before-measurement");
    }
    if (o.shots == 0) {
        throw ConfigError("scale needs a positive --shots");
    }
    for (double r : o.rates) {
        if (!(r >= 0 && r <= 1)) {
            throw ConfigError("--rates values must lie in [0, 1]");
        }
    }
    std::vector<CliffordCircuit> circuits;
    if (o.trial == "neel") {
        for (std::size_t n : o.n_list) {
            circuits.emplace_back(neel_circuit(n));
        }
    } else {
        if (!o.n_list.empty()) {
            throw ConfigError("--n-list applies to the Neel trial only; a circuit file fixes the register size");
        }
        try {
            circuits.emplace_back(parse_circuit(detail::read_file(o.trial)));
        } catch (const ArgumentError &e) {
            throw InputError(o.trial + ": " + e.what());
        }
    }

    struct Point {
        std::size_t circuit;
        double rate;
        double raw = 0, corrected = 0;
    };
    std::vector<Point> points;
    for (std::size_t c = 0; c < circuits.size(); ++c) {
        for (double r : o.rates) {
            points.push_back({c, r});
        }
    }
    std::mutex log;
    parallel_for(points.size(), o.threads, [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        Point &p = points[i];
        const auto &circuit = circuits[p.circuit];
        const std::size_t n = circuit.num_qubits();
        PauliNoiseSpec noise = PauliNoiseSpec::biased(p.rate, o.bias);
        noise.placement = placement;
        const auto dist = frame_sample(circuit, noise, o.shots, derive_stream(o.seed, "scale", i));
        MeasurementSet ms(n);
        ms.add(dist);
        PauliSum zz(n);
        zz.add(PauliString::from_str(std::string(n, 'Z')), 1.0);
        p.raw = spin_correlation(dist);
        p.corrected = fcqem_expectation(ms, zz, {}).value;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::lock_guard lock(log);
        std::fprintf(stderr, "n=%zu rate=%g: %.3fs\n", n, p.rate, secs);
    });
    CsvTable t;
    t.header = {"n", "rate", "raw", "fcqem"};
    for (const auto &p : points) {
        t.add_row({std::to_string(circuits[p.circuit].num_qubits()), format_number(p.rate), format_number(p.raw),
                   format_number(p.corrected)});
    }
    add_metadata(t, o);
    emit(o, t.str());
    return kOk;
}

// ---- dump-dist -------------------------------------------------------------

int cmd_dump_dist(const Options &o) {
    if (!(o.threshold >= 0 && o.threshold <= 1)) {
        throw ConfigError("--threshold must lie in [0, 1]");
    }
    ProbDist dist;
    if (!o.measurements.empty()) {
        const MeasurementSet ms = load_measurements(o.measurements);
        const Tpb basis = o.basis.empty() ? Tpb::all_z(ms.num_qubits()) : Tpb(o.basis);
        const ProbDist *d = ms.find(basis);
        if (!d) {
            throw MissingMeasurementError({basis.str()});
        }
        dist = *d;
    } else {
        const NoiseModel nm = parse_noise(o.noise);
        if (o.n > kMaxDensityQubits) {
            throw CapacityError("dump-dist simulates at most " + std::to_string(kMaxDensityQubits) + " qubits");
        }
        const Circuit c = trial_circuit(o, o.n);
        nm.validate(o.n);
        const Tpb basis = o.basis.empty() ? Tpb::all_z(o.n) : Tpb(o.basis);
        if (basis.num_qubits() != o.n) {
            throw ConfigError("--basis length does not match --n");
        }
        dist = measure_probs(run_noisy(c, nm), basis, nm);
        if (o.shots > 0) {
            dist = sample(dist, o.shots, o.seed);
        }
    }
    if (o.threshold == 0) {
        // Every outcome, observed or not.
        dist = ProbDist::exact_dense(dist.basis(), dist.to_dense());
    }
    const ProbDist corrected = square_normalize(dist);
    CsvTable t;
    t.header = {"outcome", "raw_prob", "corrected_prob"};
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const double p = dist.probs()[k], q = corrected.probs()[k];
        if (o.threshold == 0 || std::max(p, q) >= o.threshold) {
            t.add_row({dist.outcomes()[k].str(), format_number(p), format_number(q)});
        }
    }
    add_metadata(t, o);
    emit(o, t.str());
    return kOk;
}

// ---- ground-state ----------------------------------------------------------

int cmd_ground_state(const Options &o) {
    check_hamiltonian_source(o);
    const PauliSum h = model_hamiltonian(o, o.h);
    const auto gs = exact_ground_state(h);
    json out;
    out["metadata"] = metadata_json(o);
    out["num_qubits"] = h.num_qubits();
    out["energy"] = gs.energy;
    emit(o, out.dump(2) + "\n");
    return kOk;
}

// ---- Command line ----------------------------------------------------------

// Flattens a JSON config object into command-line tokens.
std::vector<std::string> config_tokens(const std::string &path) {
    json cfg;
    try {
        cfg = json::parse(detail::read_file(path));
    } catch (const json::exception &e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    if (!cfg.is_object() || !cfg.contains("subcommand") || !cfg["subcommand"].is_string()) {
        throw ConfigError("config " + path + " must be an object with a \"subcommand\" string");
    }
    std::vector<std::string> tokens = {cfg["subcommand"].get<std::string>()};
    auto scalar = [&](const std::string &key, const json &v) -> std::string {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_number()) {
            return v.dump();
        }
        throw ConfigError("config key \"" + key + "\" must be a string, number, boolean or array");
    };
    for (const auto &[key, v] : cfg.items()) {
        if (key == "subcommand") {
            continue;
        }
        if (v.is_boolean()) {
            if (v.get<bool>()) {
                tokens.push_back("--" + key);
            }
        } else if (v.is_array()) {
            std::string joined;
            for (const auto &x : v) {
                joined += (joined.empty() ? "" : ",") + scalar(key, x);
            }
            tokens.push_back("--" + key);
            tokens.push_back(joined);
        } else {
            tokens.push_back("--" + key);
            tokens.push_back(scalar(key, v));
        }
    }
    return tokens;
}

// "-h" is left free for the field strength.
void add_hamiltonian_options(CLI::App *sub, Options &o) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--model", o.model, "Built-in model (tfim)");
    sub->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian text file");
    sub->add_option("--n", o.n, "Number of spins")->check(CLI::PositiveNumber);
    sub->add_option("--j", o.j, "Ising coupling");
    sub->add_option("--h", o.h, "Transverse field");
    sub->add_flag("--periodic", o.periodic, "Periodic chain");
}

void add_common(CLI::App *sub, Options &o) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--output,-o", o.output, "Output path, '-' for stdout");
    sub->add_option("--threads", o.threads, "Worker threads (default: available parallelism)");
    sub->add_flag("--timing", o.timing, "Report per-point runtime on stderr");
}

int run(int argc, char **argv) {
    Options o;
    CLI::App app{"Measurement-distribution error mitigation and cumulant ground-state estimation"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", FCQEM_VERSION);
    app.require_subcommand(0, 1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file holding the subcommand and its options");

    auto *sweep = app.add_subcommand("sweep", "Simulate a parameter sweep and tabulate all estimators");
    add_hamiltonian_options(sweep, o);
    sweep->add_option("--trial", o.trial, "neel or a circuit file");
    sweep->add_option("--rotate-y", o.rotate_y, "Append RY(theta) on a qubit, q=<index>");
    sweep->add_option("--noise", o.noise, "Noise, e.g. readout=0.03,depol-2q=0.01");
    sweep->add_option("--shots", o.shots, "Shots per basis (0: exact probabilities)");
    sweep->add_option("--h-range", o.h_range, "Field sweep start:stop:step");
    sweep->add_option("--theta-range", o.theta_range, "Rotation sweep start:stop:step (pi literals allowed)");
    sweep->add_option("--p-range", o.p_range, "Global depolarizing sweep start:stop:step");
    sweep->add_option("--correction", o.correction, "per-basis or global-z");
    sweep->add_flag("--vd", o.vd, "Add exact virtual-distillation column");
    add_common(sweep, o);

    auto *mitigate = app.add_subcommand("mitigate", "Correct recorded measurements");
    mitigate->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian text file")->required();
    mitigate->add_option("--measurements", o.measurements, "Measurement JSON")->required();
    mitigate->add_option("--second", o.second, "Independent second copy for two-copy correction");
    mitigate->add_option("--preferred", o.preferred, "Preferred basis (default all-Z)");
    add_common(mitigate, o);

    auto *scale = app.add_subcommand("scale", "Frame-simulator scaling of the corrected spin correlation");
    o.n_list = {16, 64, 256, 1024};
    o.rates = {1e-4, 1e-3, 1e-2, 1e-1};
    bool n_list_given = false;
    scale->add_option("--trial", o.trial, "neel or a Clifford circuit file");
    scale->add_option_function<std::vector<std::size_t>>(
              "--n-list",
              [&](const std::vector<std::size_t> &v) {
                  o.n_list = v;
                  n_list_given = true;
              },
              "Register sizes for the Neel trial")
        ->delimiter(',');
    scale->add_option("--rates", o.rates, "Total Pauli error rates")->delimiter(',');
    scale->add_option("--shots", o.shots, "Shots per point");
    scale->add_option("--bias", o.bias, "Dephasing bias p_z / p_x");
    scale->add_option("--placement", o.placement, "every-layer or before-measurement");
    add_common(scale, o);

    auto *dump = app.add_subcommand("dump-dist", "Raw and squared-normalized outcome distribution");
    dump->add_option("--trial", o.trial, "neel or a circuit file");
    dump->add_option("--n", o.n, "Register size")->check(CLI::PositiveNumber);
    dump->add_option("--noise", o.noise, "Noise, e.g. readout=0.03");
    dump->add_option("--shots", o.shots, "Shots (0: exact probabilities)");
    dump->add_option("--measurements", o.measurements, "Take the distribution from a measurement file");
    dump->add_option("--basis", o.basis, "Measurement basis (default all-Z)");
    dump->add_option("--threshold", o.threshold, "Omit rows below this probability (0: all outcomes)");
    add_common(dump, o);

    auto *ground = app.add_subcommand("ground-state", "Exact ground energy by dense diagonalization");
    add_hamiltonian_options(ground, o);
    add_common(ground, o);

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            if (app.get_subcommands().size() > 0) {
                throw ConfigError("--config cannot be combined with a subcommand on the command line");
            }
            auto tokens = config_tokens(config_path);
            std::reverse(tokens.begin(), tokens.end());
            app.clear();
            config_path.clear();
            app.parse(tokens);
        }
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kConfig;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kConfig;
    }
    o.subcommand = app.get_subcommands().front()->get_name();
    if (o.subcommand == "scale" && o.trial != "neel" && !n_list_given) {
        o.n_list.clear();
    }
    if (o.threads == 0) {
        o.threads = std::max(1u, std::thread::hardware_concurrency());
    }
    if (o.subcommand == "sweep") {
        return cmd_sweep(o);
    }
    if (o.subcommand == "mitigate") {
        return cmd_mitigate(o);
    }
    if (o.subcommand == "scale") {
        return cmd_scale(o);
    }
    if (o.subcommand == "dump-dist") {
        return cmd_dump_dist(o);
    }
    return cmd_ground_state(o);
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const MissingMeasurementError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const ParseError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const IoError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const DimensionError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const ArgumentError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
}
