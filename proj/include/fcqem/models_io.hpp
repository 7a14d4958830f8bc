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

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fcqem/circuit.hpp"
#include "fcqem/distribution.hpp"
#include "fcqem/errors.hpp"
#include "fcqem/pauli.hpp"

namespace fcqem {

// ---- Transverse-field Ising model ----------------------------------------

enum class Topology { ChainOpen, ChainPeriodic, Explicit };

struct Bond {
    std::size_t i = 0, j = 0;
    double coupling = 1.0;
};

// H = sum_<ij> J_ij Z_i Z_j + h sum_i X_i. Chain presets use a uniform J;
// Explicit uses `bonds` as given.
struct TfimSpec {
    std::size_t n = 2;
    double j = 1.0;
    double h = 0.0;
    Topology topology = Topology::ChainOpen;
    std::vector<Bond> bonds;

    static TfimSpec chain(std::size_t n, double j, double h, bool periodic = false) {
        TfimSpec s;
        s.n = n;
        s.j = j;
        s.h = h;
        s.topology = periodic ? Topology::ChainPeriodic : Topology::ChainOpen;
        return s;
    }

    std::vector<Bond> resolved_bonds() const {
        if (topology == Topology::Explicit) {
            return bonds;
        }
        std::vector<Bond> out;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            out.push_back({k, k + 1, j});
        }
        if (topology == Topology::ChainPeriodic && n > 2) {
            out.push_back({n - 1, 0, j});
        }
        return out;
    }
};

inline PauliSum build_tfim(const TfimSpec &spec) {
    if (spec.n == 0) {
        throw ArgumentError("TFIM needs at least one site");
    }
    PauliSum h(spec.n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto &b : spec.resolved_bonds()) {
        if (b.i >= spec.n || b.j >= spec.n || b.i == b.j) {
            throw ArgumentError("invalid bond (" + std::to_string(b.i) + ", " + std::to_string(b.j) + ") for " +
                                std::to_string(spec.n) + " sites");
        }
        if (!seen.insert(std::minmax(b.i, b.j)).second) {
            throw ArgumentError("duplicate bond (" + std::to_string(b.i) + ", " + std::to_string(b.j) + ")");
        }
        PauliString zz(spec.n);
        zz.set_letter(b.i, 'Z');
        zz.set_letter(b.j, 'Z');
        h.add(zz, b.coupling);
    }
    if (spec.h != 0) {
        for (std::size_t k = 0; k < spec.n; ++k) {
            PauliString x(spec.n);
            x.set_letter(k, 'X');
            h.add(x, spec.h);
        }
    }
    return h;
}

// ---- Small text helpers ---------------------------------------------------

// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << content;
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

}  // namespace detail

// ---- Hamiltonian text files ----------------------------------------------
//
//   # comment
//   ZZII -0.4759
//   IIXX 0.125

inline PauliSum parse_hamiltonian(std::string_view text) {
    std::optional<PauliSum> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto tok = detail::split_ws(line);
        if (tok.empty()) {
            continue;
        }
        if (tok.size() != 2) {
            throw ParseError("expected '<pauli string> <weight>'", line_no);
        }
        PauliString p;
        try {
            p = PauliString::from_str(tok[0]);
        } catch (const std::exception &e) {
            throw ParseError(e.what(), line_no);
        }
        if (p.phase() != 0) {
            throw ParseError("Pauli string must not carry a phase", line_no);
        }
        double w = 0;
        if (!detail::parse_double(tok[1], w) || !std::isfinite(w)) {
            throw ParseError("invalid weight '" + std::string(tok[1]) + "'", line_no);
        }
        if (!out) {
            out.emplace(p.num_qubits());
        } else if (out->num_qubits() != p.num_qubits()) {
            throw ParseError("string length " + std::to_string(p.num_qubits()) + " differs from earlier terms (" +
                                 std::to_string(out->num_qubits()) + ")",
                             line_no);
        }
        out->add(p, w);
    }
    if (!out) {
        throw ParseError("Hamiltonian file has no terms");
    }
    return *out;
}

inline PauliSum load_hamiltonian(const std::string &path) {
    return parse_hamiltonian(detail::read_file(path));
}

inline std::string format_hamiltonian(const PauliSum &h) {
    std::string out;
    char buf[64];
    for (const auto &[p, w] : h.terms()) {
        std::snprintf(buf, sizeof buf, "%.17g", w);
        out += p.str();
        out += ' ';
        out += buf;
        out += '\n';
    }
    return out;
}

inline void save_hamiltonian(const PauliSum &h, const std::string &path) {
    detail::write_file(path, format_hamiltonian(h));
}

// ---- Measurement JSON ------------------------------------------------------
//
// {"metadata": {...}, "num_qubits": N,
//  "records": [{"basis": "ZZXY", "shots": S, "counts": {"0101": c, ...}},
//              {"basis": "ZZZZ", "exact": true, "probs": {"0101": p, ...}}]}

namespace detail {

inline Bitstring parse_outcome(const std::string &key, std::size_t n, const std::string &where) {
    if (key.size() != n) {
        throw ParseError(where + ": outcome \"" + key + "\" has length " + std::to_string(key.size()) +
                         ", expected " + std::to_string(n));
    }
    try {
        return Bitstring::from_str(key);
    } catch (const ParseError &) {
        throw ParseError(where + ": outcome \"" + key + "\" is not a bitstring");
    }
}

inline ProbDist parse_record(const nlohmann::json &rec, std::size_t n, std::size_t index) {
    std::string where = "record " + std::to_string(index);
    if (!rec.is_object()) {
        throw ParseError(where + ": not an object");
    }
    if (!rec.contains("basis") || !rec["basis"].is_string()) {
        throw ParseError(where + ": missing string field \"basis\"");
    }
    const std::string basis_text = rec["basis"].get<std::string>();
    where += " (basis " + basis_text + ")";
    Tpb basis;
    try {
        basis = Tpb(basis_text);
    } catch (const std::exception &e) {
        throw ParseError(where + ": " + e.what());
    }
    if (basis.num_qubits() != n) {
        throw ParseError(where + ": basis length differs from num_qubits");
    }
    const bool exact = rec.contains("exact") && rec["exact"].is_boolean() && rec["exact"].get<bool>();
    if (exact) {
        if (!rec.contains("probs") || !rec["probs"].is_object()) {
            throw ParseError(where + ": exact record needs a \"probs\" object");
        }
        std::vector<std::pair<Bitstring, double>> entries;
        for (const auto &[k, v] : rec["probs"].items()) {
            if (!v.is_number()) {
                throw ParseError(where + ": probability for " + k + " is not a number");
            }
            const double p = v.get<double>();
            if (!(p >= 0 && p <= 1)) {
                throw ParseError(where + ": probability for " + k + " outside [0, 1]");
            }
            entries.emplace_back(parse_outcome(k, n, where), p);
        }
        return ProbDist::exact_sparse(basis, std::move(entries));
    }
    if (!rec.contains("shots") || !rec["shots"].is_number_unsigned()) {
        throw ParseError(where + ": missing non-negative integer \"shots\"");
    }
    if (!rec.contains("counts") || !rec["counts"].is_object()) {
        throw ParseError(where + ": missing \"counts\" object");
    }
    const auto shots = rec["shots"].get<std::uint64_t>();
    std::uint64_t total = 0;
    std::vector<std::pair<Bitstring, std::uint64_t>> entries;
    for (const auto &[k, v] : rec["counts"].items()) {
        if (!v.is_number_unsigned()) {
            throw ParseError(where + ": count for " + k + " is not a non-negative integer");
        }
        const auto c = v.get<std::uint64_t>();
        total += c;
        entries.emplace_back(parse_outcome(k, n, where), c);
    }
    if (total != shots) {
        throw ParseError(where + ": counts sum to " + std::to_string(total) + " but shots is " +
                         std::to_string(shots));
    }
    try {
        return ProbDist::from_counts(basis, std::move(entries));
    } catch (const std::exception &e) {
        throw ParseError(where + ": " + e.what());
    }
}

}  // namespace detail

inline MeasurementSet parse_measurements(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("measurement file must be a JSON object");
    }
    if (!j.contains("num_qubits") || !j["num_qubits"].is_number_unsigned() || j["num_qubits"].get<std::size_t>() == 0) {
        throw ParseError("missing positive integer \"num_qubits\"");
    }
    if (!j.contains("records") || !j["records"].is_array()) {
        throw ParseError("missing \"records\" array");
    }
    const auto n = j["num_qubits"].get<std::size_t>();
    MeasurementSet ms(n);
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) {
            throw ParseError("\"metadata\" must be an object");
        }
        for (const auto &[k, v] : j["metadata"].items()) {
            ms.metadata()[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
    }
    std::size_t index = 0;
    for (const auto &rec : j["records"]) {
        ProbDist d = detail::parse_record(rec, n, index);
        if (ms.contains(d.basis())) {
            throw ParseError("record " + std::to_string(index) + ": duplicate basis " + d.basis().str());
        }
        ms.add(std::move(d));
        ++index;
    }
    return ms;
}

inline MeasurementSet load_measurements(const std::string &path) {
    return parse_measurements(detail::read_file(path));
}

// Canonical form: keys sorted, records in basis order, two-space indent.
inline std::string format_measurements(const MeasurementSet &ms) {
    nlohmann::json j;
    j["num_qubits"] = ms.num_qubits();
    if (!ms.metadata().empty()) {
        j["metadata"] = ms.metadata();
    }
    auto records = nlohmann::json::array();
    for (const auto &[basis, d] : ms.dists()) {
        nlohmann::json r;
        r["basis"] = basis.str();
        if (d.is_exact()) {
            r["exact"] = true;
            nlohmann::json probs = nlohmann::json::object();
            for (std::size_t k = 0; k < d.size(); ++k) {
                probs[d.outcomes()[k].str()] = d.probs()[k];
            }
            r["probs"] = std::move(probs);
        } else {
            r["shots"] = *d.shots();
            nlohmann::json counts = nlohmann::json::object();
            for (std::size_t k = 0; k < d.size(); ++k) {
                counts[d.outcomes()[k].str()] = d.counts()[k];
            }
            r["counts"] = std::move(counts);
        }
        records.push_back(std::move(r));
    }
    j["records"] = std::move(records);
    return j.dump(2) + "\n";
}

inline void save_measurements(const MeasurementSet &ms, const std::string &path) {
    detail::write_file(path, format_measurements(ms));
}

// ---- CSV results -------------------------------------------------------------

// Header plus rows, optionally preceded by "# key: value" metadata lines.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_row(std::vector<std::string> row) {
        if (row.size() != header.size()) {
            throw DimensionError("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                                 std::to_string(header.size()));
        }
        rows.push_back(std::move(row));
    }

    std::string str() const {
        std::string out;
        for (const auto &[k, v] : metadata) {
            out += "# " + k + ": " + v + "\n";
        }
        auto line = [&](const std::vector<std::string> &fields) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i) {
                    out += ',';
                }
                out += fields[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto &r : rows) {
            line(r);
        }
        return out;
    }
};

inline void write_results(const CsvTable &table, const std::string &path) {
    detail::write_file(path, table.str());
}

// One sweep point: parameter value and the estimates at that point.
struct SweepRow {
    double param = 0;
    double raw = 0, fcqem = 0, qcm = 0, fcqem_qcm = 0, exact = 0;
    std::optional<double> vd;
    std::string qcm_status, fcqem_qcm_status;
    bool fcqem_out_of_range = false;
};

inline CsvTable sweep_table(const std::vector<SweepRow> &rows, const std::string &param_name, bool with_vd = false) {
    CsvTable t;
    t.header = {param_name, "raw", "fcqem", "qcm", "fcqem_qcm", "exact"};
    if (with_vd) {
        t.header.push_back("vd");
    }
    for (const char *s : {"qcm_status", "fcqem_qcm_status", "fcqem_out_of_range"}) {
        t.header.push_back(s);
    }
    for (const auto &r : rows) {
        std::vector<std::string> f = {format_number(r.param), format_number(r.raw),       format_number(r.fcqem),
                                      format_number(r.qcm),   format_number(r.fcqem_qcm), format_number(r.exact)};
        if (with_vd) {
            f.push_back(r.vd ? format_number(*r.vd) : "");
        }
        f.push_back(r.qcm_status);
        f.push_back(r.fcqem_qcm_status);
        f.push_back(r.fcqem_out_of_range ? "1" : "0");
        t.add_row(std::move(f));
    }
    return t;
}

// outcome, raw_prob, corrected_prob for one basis; the corrected column is
// the squared and renormalised distribution.
inline CsvTable distribution_table(const ProbDist &raw, const ProbDist &corrected) {
    if (raw.outcomes() != corrected.outcomes()) {
        throw DimensionError("raw and corrected distributions have different supports");
    }
    CsvTable t;
    t.header = {"outcome", "raw_prob", "corrected_prob"};
    for (std::size_t k = 0; k < raw.size(); ++k) {
        t.add_row({raw.outcomes()[k].str(), format_number(raw.probs()[k]), format_number(corrected.probs()[k])});
    }
    return t;
}

}  // namespace fcqem
