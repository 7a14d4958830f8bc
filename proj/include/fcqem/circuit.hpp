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

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fcqem/errors.hpp"

namespace fcqem {

enum class GateKind { H, X, Y, Z, S, CNOT, CZ, RX, RY, RZ, ISWAP };

inline std::string_view gate_name(GateKind k) {
    static constexpr std::string_view names[] = {"H",    "X",  "Y",  "Z",  "S",    "CNOT",
                                                 "CZ",   "RX", "RY", "RZ", "ISWAP"};
    return names[static_cast<int>(k)];
}

inline bool is_two_qubit(GateKind k) {
    return k == GateKind::CNOT || k == GateKind::CZ || k == GateKind::ISWAP;
}

inline bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

inline bool is_clifford(GateKind k) {
    return !is_rotation(k);
}

struct Gate {
    GateKind kind;
    std::array<std::size_t, 2> qubits{0, 0};
    double angle = 0.0;

    std::size_t arity() const {
        return is_two_qubit(kind) ? 2 : 1;
    }
};

class Circuit {
   public:
    explicit Circuit(std::size_t num_qubits = 0) : num_qubits_(num_qubits) {
    }

    std::size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const noexcept {
        return gates_;
    }
    bool empty() const noexcept {
        return gates_.empty();
    }

    Circuit &add(Gate g) {
        for (std::size_t i = 0; i < g.arity(); ++i) {
            if (g.qubits[i] >= num_qubits_) {
                throw ArgumentError(std::string(gate_name(g.kind)) + " on qubit " + std::to_string(g.qubits[i]) +
                                    " but circuit has " + std::to_string(num_qubits_) + " qubits");
            }
        }
        if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
            throw ArgumentError(std::string(gate_name(g.kind)) + " needs two distinct qubits");
        }
        gates_.push_back(g);
        return *this;
    }
    Circuit &add(GateKind k, std::size_t q) {
        return add(Gate{k, {q, 0}, 0.0});
    }
    Circuit &add(GateKind k, std::size_t a, std::size_t b) {
        return add(Gate{k, {a, b}, 0.0});
    }
    Circuit &rotate(GateKind k, std::size_t q, double theta) {
        return add(Gate{k, {q, 0}, theta});
    }

    Circuit &append(const Circuit &other) {
        if (other.num_qubits_ > num_qubits_) {
            throw ArgumentError("appended circuit is wider than the target");
        }
        for (const auto &g : other.gates_) {
            add(g);
        }
        return *this;
    }

    Circuit widened(std::size_t n) const {
        if (n < num_qubits_) {
            throw ArgumentError("cannot narrow a circuit");
        }
        Circuit c(n);
        c.gates_ = gates_;
        return c;
    }

    bool is_clifford() const {
        return std::all_of(gates_.begin(), gates_.end(), [](const Gate &g) { return fcqem::is_clifford(g.kind); });
    }

    // As-soon-as-possible moment assignment: each gate goes one layer after
    // the latest layer touching any of its qubits.
    std::vector<std::vector<Gate>> layers() const {
        std::vector<std::vector<Gate>> out;
        std::vector<std::size_t> next_free(num_qubits_, 0);
        for (const auto &g : gates_) {
            std::size_t layer = next_free[g.qubits[0]];
            if (g.arity() == 2) {
                layer = std::max(layer, next_free[g.qubits[1]]);
            }
            if (layer >= out.size()) {
                out.resize(layer + 1);
            }
            out[layer].push_back(g);
            for (std::size_t i = 0; i < g.arity(); ++i) {
                next_free[g.qubits[i]] = layer + 1;
            }
        }
        return out;
    }

    std::string to_text() const {
        std::ostringstream os;
        os.precision(17);
        for (const auto &g : gates_) {
            os << gate_name(g.kind) << ' ' << g.qubits[0];
            if (g.arity() == 2) {
                os << ' ' << g.qubits[1];
            }
            if (is_rotation(g.kind)) {
                os << ' ' << g.angle;
            }
            os << '\n';
        }
        return os.str();
    }

   private:
    std::size_t num_qubits_;
    std::vector<Gate> gates_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

inline bool parse_size(std::string_view s, std::size_t &out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

inline bool parse_double(std::string_view s, double &out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace detail

// Parses an angle: a decimal, "pi", or a decimal multiple such as "0.25pi".
inline double parse_angle(std::string_view s) {
    double v = 0;
    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
        std::string_view coeff = s.substr(0, s.size() - 2);
        if (coeff.empty() || coeff == "+") {
            return std::numbers::pi;
        }
        if (coeff == "-") {
            return -std::numbers::pi;
        }
        if (coeff.back() == '*') {
            coeff.remove_suffix(1);
        }
        if (!detail::parse_double(coeff, v)) {
            throw ParseError("invalid angle \"" + std::string(s) + "\"");
        }
        return v * std::numbers::pi;
    }
    if (!detail::parse_double(s, v)) {
        throw ParseError("invalid angle \"" + std::string(s) + "\"");
    }
    return v;
}

// Line-oriented circuit text: one gate per line ("H 0", "CNOT 0 1",
// "RY 3 0.6283185307"), '#' starts a comment. The register is sized to the
// largest referenced qubit, or `min_qubits` if larger.
inline Circuit parse_circuit(std::string_view text, std::size_t min_qubits = 0) {
    std::vector<Gate> gates;
    std::size_t width = min_qubits;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tok = detail::split_ws(line);
        if (tok.empty()) {
            continue;
        }
        std::string name(tok[0]);
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
        if (name == "CX") {
            name = "CNOT";
        }
        Gate g{GateKind::H};
        bool found = false;
        for (int k = 0; k <= static_cast<int>(GateKind::ISWAP); ++k) {
            if (gate_name(static_cast<GateKind>(k)) == name) {
                g.kind = static_cast<GateKind>(k);
                found = true;
            }
        }
        if (!found) {
            throw ParseError("unknown gate \"" + std::string(tok[0]) + "\"", line_no);
        }
        std::size_t want = g.arity() + (is_rotation(g.kind) ? 1 : 0) + 1;
        if (tok.size() != want) {
            throw ParseError(name + " expects " + std::to_string(want - 1) + " arguments", line_no);
        }
        for (std::size_t i = 0; i < g.arity(); ++i) {
            if (!detail::parse_size(tok[1 + i], g.qubits[i])) {
                throw ParseError("invalid qubit index \"" + std::string(tok[1 + i]) + "\"", line_no);
            }
            width = std::max(width, g.qubits[i] + 1);
        }
        if (is_rotation(g.kind)) {
            try {
                g.angle = parse_angle(tok.back());
            } catch (const ParseError &e) {
                throw ParseError(e.what(), line_no);
            }
        }
        if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
            throw ParseError(name + " needs two distinct qubits", line_no);
        }
        gates.push_back(g);
    }
    Circuit c(width);
    for (const auto &g : gates) {
        c.add(g);
    }
    return c;
}

// Antiferromagnetic Neel state (|0101...> - |1010...>) / sqrt(2) from |0...0>.
// Clifford: X H on qubit 0, a nearest-neighbour CNOT chain, then X on odd qubits.
inline Circuit neel_circuit(std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw ArgumentError("Neel circuit needs an even qubit count >= 2, got " + std::to_string(n));
    }
    Circuit c(n);
    c.add(GateKind::X, 0).add(GateKind::H, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        c.add(GateKind::CNOT, k, k + 1);
    }
    for (std::size_t k = 1; k < n; k += 2) {
        c.add(GateKind::X, k);
    }
    return c;
}

}  // namespace fcqem
