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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fcqem/bitstring.hpp"
#include "fcqem/errors.hpp"

namespace fcqem {

// Weights with magnitude below this are dropped from every PauliSum.
inline constexpr double kPruneTolerance = 1e-12;

// A Pauli operator i^phase * P_0 (x) P_1 (x) ... in symplectic form.
//
// Per qubit: (x, z) = (0,0) I, (1,0) X, (1,1) Y, (0,1) Z. Y is the Hermitian
// Pauli Y, not XZ. `phase` is the exponent of i, kept mod 4.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits) : x_(num_qubits), z_(num_qubits) {
    }

    // Accepts "ZZIX", optionally prefixed by "+", "-", "i", "+i" or "-i".
    static PauliString from_str(std::string_view text) {
        std::uint8_t phase = 0;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            phase = text[0] == '-' ? 2 : 0;
            text.remove_prefix(1);
        }
        if (!text.empty() && text[0] == 'i') {
            phase = (phase + 1) & 3;
            text.remove_prefix(1);
        }
        if (text.empty()) {
            throw ParseError("empty Pauli string");
        }
        PauliString p(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            switch (text[k]) {
                case 'I':
                case '_':
                    break;
                case 'X':
                    p.x_.set(k, true);
                    break;
                case 'Y':
                    p.x_.set(k, true);
                    p.z_.set(k, true);
                    break;
                case 'Z':
                    p.z_.set(k, true);
                    break;
                default:
                    throw ParseError("invalid Pauli letter '" + std::string(1, text[k]) + "' in \"" +
                                     std::string(text) + "\"");
            }
        }
        p.phase_ = phase;
        return p;
    }

    std::size_t num_qubits() const noexcept {
        return x_.size();
    }
    std::uint8_t phase() const noexcept {
        return phase_;
    }
    void set_phase(std::uint8_t phase) noexcept {
        phase_ = phase & 3;
    }
    const Bitstring &x_mask() const noexcept {
        return x_;
    }
    const Bitstring &z_mask() const noexcept {
        return z_;
    }

    char letter(std::size_t k) const noexcept {
        return "IZXY"[(x_.get(k) << 1) | z_.get(k)];
    }
    void set_letter(std::size_t k, char c) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw ArgumentError("invalid Pauli letter '" + std::string(1, c) + "'");
        }
        x_.set(k, c == 'X' || c == 'Y');
        z_.set(k, c == 'Z' || c == 'Y');
    }

    bool is_identity() const noexcept {
        return x_.popcount() == 0 && z_.popcount() == 0;
    }

    // Qubits acted on non-trivially, as a mask in Bitstring layout.
    Bitstring support() const {
        Bitstring s = x_;
        auto sw = s.words();
        auto zw = z_.words();
        for (std::size_t i = 0; i < sw.size(); ++i) {
            sw[i] |= zw[i];
        }
        return s;
    }

    std::size_t weight() const {
        return support().popcount();
    }

    std::size_t count_y() const noexcept {
        std::size_t c = 0;
        auto xw = x_.words();
        auto zw = z_.words();
        for (std::size_t i = 0; i < xw.size(); ++i) {
            c += std::popcount(xw[i] & zw[i]);
        }
        return c;
    }

    PauliString without_phase() const {
        PauliString p = *this;
        p.phase_ = 0;
        return p;
    }

    std::string str() const {
        std::string s(num_qubits(), 'I');
        for (std::size_t k = 0; k < s.size(); ++k) {
            s[k] = letter(k);
        }
        return s;
    }

    std::string signed_str() const {
        static constexpr const char *prefix[] = {"+", "+i", "-", "-i"};
        return prefix[phase_] + str();
    }

    // In-place right multiplication: *this = *this * rhs, with exact phase.
    PauliString &operator*=(const PauliString &rhs) {
        if (rhs.num_qubits() != num_qubits()) {
            throw DimensionError("Pauli string size mismatch: " + std::to_string(num_qubits()) + " vs " +
                                 std::to_string(rhs.num_qubits()));
        }
        auto ax = x_.words();
        auto az = z_.words();
        auto bx = rhs.x_.words();
        auto bz = rhs.z_.words();
        int acc = 0;
        for (std::size_t i = 0; i < ax.size(); ++i) {
            std::uint64_t a_x = ax[i] & ~az[i], a_y = ax[i] & az[i], a_z = ~ax[i] & az[i];
            std::uint64_t b_x = bx[i] & ~bz[i], b_y = bx[i] & bz[i], b_z = ~bx[i] & bz[i];
            // XY = iZ, YZ = iX, ZX = iY; reversed orders give -i.
            std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
            std::uint64_t minus = (a_x & b_z) | (a_y & b_x) | (a_z & b_y);
            acc += std::popcount(plus) - std::popcount(minus);
            ax[i] ^= bx[i];
            az[i] ^= bz[i];
        }
        phase_ = static_cast<std::uint8_t>((phase_ + rhs.phase_ + (acc & 3)) & 3);
        return *this;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

    // Lexicographic on the letter string with I < X < Y < Z, then by phase.
    friend std::strong_ordering operator<=>(const PauliString &a, const PauliString &b) {
        if (auto c = a.num_qubits() <=> b.num_qubits(); c != 0) {
            return c;
        }
        auto ax = a.x_.words(), az = a.z_.words(), bx = b.x_.words(), bz = b.z_.words();
        for (std::size_t i = 0; i < ax.size(); ++i) {
            // 2-bit key (z, x^z) sorts I, X, Y, Z in that order.
            std::uint64_t hi_a = az[i], lo_a = ax[i] ^ az[i];
            std::uint64_t hi_b = bz[i], lo_b = bx[i] ^ bz[i];
            std::uint64_t diff = (hi_a ^ hi_b) | (lo_a ^ lo_b);
            if (diff) {
                int shift = 63 - std::countl_zero(diff);
                unsigned ka = (((hi_a >> shift) & 1) << 1) | ((lo_a >> shift) & 1);
                unsigned kb = (((hi_b >> shift) & 1) << 1) | ((lo_b >> shift) & 1);
                return ka <=> kb;
            }
        }
        return a.phase_ <=> b.phase_;
    }

    std::size_t hash() const noexcept {
        return x_.hash() * 31 + z_.hash() * 7 + phase_;
    }

   private:
    Bitstring x_;
    Bitstring z_;
    std::uint8_t phase_ = 0;
};

inline PauliString multiply(const PauliString &a, const PauliString &b) {
    PauliString r = a;
    r *= b;
    return r;
}

inline PauliString operator*(const PauliString &a, const PauliString &b) {
    return multiply(a, b);
}

// Full (symplectic) commutation.
inline bool commutes(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("Pauli string size mismatch");
    }
    auto ax = a.x_mask().words(), az = a.z_mask().words();
    auto bx = b.x_mask().words(), bz = b.z_mask().words();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
        acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    }
    return (std::popcount(acc) & 1) == 0;
}

// True iff on every qubit the letters agree or one of them is I.
inline bool qubitwise_commutes(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("Pauli string size mismatch: " + std::to_string(a.num_qubits()) + " vs " +
                             std::to_string(b.num_qubits()));
    }
    auto ax = a.x_mask().words(), az = a.z_mask().words();
    auto bx = b.x_mask().words(), bz = b.z_mask().words();
    for (std::size_t i = 0; i < ax.size(); ++i) {
        std::uint64_t both = (ax[i] | az[i]) & (bx[i] | bz[i]);
        if (both & ((ax[i] ^ bx[i]) | (az[i] ^ bz[i]))) {
            return false;
        }
    }
    return true;
}

// Eigenvalue of a basis-diagonalised Pauli string on a measured outcome:
// (-1)^(parity of outcome bits on the string's support).
inline int outcome_eigenvalue(const PauliString &p, const Bitstring &outcome) {
    if (outcome.size() != p.num_qubits()) {
        throw DimensionError("outcome length " + std::to_string(outcome.size()) + " does not match " +
                             std::to_string(p.num_qubits()) + " qubits");
    }
    return outcome.masked_parity(p.support().words()) ? -1 : 1;
}

// Tensor-product measurement basis: one of X, Y, Z per qubit.
struct Tpb {
    std::string letters;

    Tpb() = default;
    explicit Tpb(std::string s) : letters(std::move(s)) {
        if (letters.empty()) {
            throw ArgumentError("empty measurement basis");
        }
        for (char c : letters) {
            if (c != 'X' && c != 'Y' && c != 'Z') {
                throw ArgumentError("invalid basis letter '" + std::string(1, c) + "' in \"" + letters + "\"");
            }
        }
    }
    static Tpb all_z(std::size_t n) {
        return Tpb(std::string(n, 'Z'));
    }

    std::size_t num_qubits() const noexcept {
        return letters.size();
    }
    const std::string &str() const noexcept {
        return letters;
    }

    bool hosts(const PauliString &p) const {
        if (p.num_qubits() != letters.size()) {
            throw DimensionError("basis length does not match Pauli string size");
        }
        for (std::size_t k = 0; k < letters.size(); ++k) {
            char c = p.letter(k);
            if (c != 'I' && c != letters[k]) {
                return false;
            }
        }
        return true;
    }

    friend auto operator<=>(const Tpb &, const Tpb &) = default;
};

// Real-weighted sum of phase-free Pauli strings.
class PauliSum {
   public:
    using TermMap = std::map<PauliString, double>;

    PauliSum() = default;
    explicit PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits == 0) {
            throw ArgumentError("PauliSum needs at least one qubit");
        }
    }

    static PauliSum from_terms(std::initializer_list<std::pair<std::string_view, double>> terms) {
        if (terms.size() == 0) {
            throw ArgumentError("from_terms needs at least one term to fix the qubit count");
        }
        PauliSum s(terms.begin()->first.size());
        for (const auto &[text, w] : terms) {
            s.add(PauliString::from_str(text), w);
        }
        return s;
    }

    std::size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    const TermMap &terms() const noexcept {
        return terms_;
    }
    std::size_t size() const noexcept {
        return terms_.size();
    }
    bool empty() const noexcept {
        return terms_.empty();
    }

    // Adds w * p. A sign phase is folded into the weight; +-i is rejected.
    void add(const PauliString &p, double w) {
        if (p.num_qubits() != num_qubits_) {
            throw DimensionError("term has " + std::to_string(p.num_qubits()) + " qubits, sum has " +
                                 std::to_string(num_qubits_));
        }
        if (p.phase() & 1) {
            throw ConsistencyError("imaginary-phase Pauli string added to a real PauliSum: " + p.signed_str());
        }
        if (p.phase() == 2) {
            w = -w;
        }
        auto key = p.without_phase();
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (std::abs(w) >= kPruneTolerance) {
                terms_.emplace(std::move(key), w);
            }
            return;
        }
        it->second += w;
        if (std::abs(it->second) < kPruneTolerance) {
            terms_.erase(it);
        }
    }

    double weight(const PauliString &p) const {
        auto it = terms_.find(p.without_phase());
        return it == terms_.end() ? 0.0 : it->second;
    }

    double identity_weight() const {
        return weight(PauliString(num_qubits_));
    }

    double l1_norm() const {
        double s = 0;
        for (const auto &[p, w] : terms_) {
            s += std::abs(w);
        }
        return s;
    }

    std::vector<PauliString> strings() const {
        std::vector<PauliString> out;
        out.reserve(terms_.size());
        for (const auto &[p, w] : terms_) {
            out.push_back(p);
        }
        return out;
    }

    PauliSum shifted(double alpha) const {
        PauliSum r = *this;
        r.add(PauliString(num_qubits_), alpha);
        return r;
    }

    friend bool operator==(const PauliSum &, const PauliSum &) = default;

   private:
    std::size_t num_qubits_ = 0;
    TermMap terms_;
};

inline bool approx_equal(const PauliSum &a, const PauliSum &b, double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    for (const auto &[p, w] : a.terms()) {
        if (std::abs(w - b.weight(p)) > tol) {
            return false;
        }
    }
    for (const auto &[p, w] : b.terms()) {
        if (std::abs(w - a.weight(p)) > tol) {
            return false;
        }
    }
    return true;
}

namespace detail {
struct PauliHash {
    std::size_t operator()(const PauliString &p) const noexcept {
        return p.hash();
    }
};
}  // namespace detail

// Product of two real Pauli sums. Imaginary residues are dropped when below
// kPruneTolerance * max(1, |A|_1 |B|_1) and raise ConsistencyError otherwise
// (the product of non-commuting Hermitian sums is not Hermitian).
inline PauliSum sum_multiply(const PauliSum &a, const PauliSum &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("PauliSum size mismatch: " + std::to_string(a.num_qubits()) + " vs " +
                             std::to_string(b.num_qubits()));
    }
    std::unordered_map<PauliString, std::complex<double>, detail::PauliHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto &[pa, wa] : a.terms()) {
        for (const auto &[pb, wb] : b.terms()) {
            PauliString prod = multiply(pa, pb);
            static constexpr std::complex<double> unit[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            std::complex<double> w = unit[prod.phase()] * (wa * wb);
            prod.set_phase(0);
            acc[std::move(prod)] += w;
        }
    }
    const double imag_tol = kPruneTolerance * std::max(1.0, a.l1_norm() * b.l1_norm());
    PauliSum out(a.num_qubits());
    for (auto &[p, w] : acc) {
        if (std::abs(w.imag()) > imag_tol) {
            throw ConsistencyError("non-negligible imaginary weight " + std::to_string(w.imag()) + " on " +
                                   p.str() + " in PauliSum product");
        }
        out.add(p, w.real());
    }
    return out;
}

// H, H^2, ..., H^max_order together with the union of their strings.
struct HamiltonianPowers {
    std::vector<PauliSum> powers;

    // Union of strings over all powers, with the largest |weight| any power
    // gives each string (used to order measurement grouping).
    PauliSum union_weights() const {
        std::map<PauliString, double> best;
        for (const auto &pw : powers) {
            for (const auto &[p, w] : pw.terms()) {
                auto &slot = best[p];
                slot = std::max(slot, std::abs(w));
            }
        }
        PauliSum u(powers.front().num_qubits());
        for (const auto &[p, w] : best) {
            u.add(p, w);
        }
        return u;
    }

    std::vector<PauliString> strings() const {
        std::set<PauliString> all;
        for (const auto &pw : powers) {
            for (const auto &[p, w] : pw.terms()) {
                all.insert(p);
            }
        }
        return {all.begin(), all.end()};
    }
};

inline HamiltonianPowers hamiltonian_powers(const PauliSum &h, int max_order) {
    if (max_order < 1 || max_order > 4) {
        throw ArgumentError("max_order must be in [1, 4], got " + std::to_string(max_order));
    }
    HamiltonianPowers r;
    r.powers.push_back(h);
    for (int k = 2; k <= max_order; ++k) {
        r.powers.push_back(sum_multiply(r.powers.back(), h));
    }
    return r;
}

// Assignment of Pauli strings to qubit-wise-commuting measurement bases.
struct TpbGrouping {
    std::map<Tpb, std::vector<PauliString>> groups;
    std::map<PauliString, Tpb> host;

    std::vector<Tpb> bases() const {
        std::vector<Tpb> out;
        for (const auto &[b, members] : groups) {
            out.push_back(b);
        }
        return out;
    }
};

namespace detail {

inline TpbGrouping group_sorted(const std::vector<PauliString> &ordered, std::size_t n) {
    // '?' marks a qubit no member constrains yet; resolved to Z at the end.
    std::vector<std::string> partial;
    std::vector<std::vector<PauliString>> members;
    for (const auto &p : ordered) {
        if (p.num_qubits() != n) {
            throw DimensionError("Pauli strings in a grouping must share a qubit count");
        }
        std::size_t slot = partial.size();
        for (std::size_t g = 0; g < partial.size(); ++g) {
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) {
                char c = p.letter(k);
                ok = c == 'I' || partial[g][k] == '?' || partial[g][k] == c;
            }
            if (ok) {
                slot = g;
                break;
            }
        }
        if (slot == partial.size()) {
            partial.emplace_back(n, '?');
            members.emplace_back();
        }
        for (std::size_t k = 0; k < n; ++k) {
            char c = p.letter(k);
            if (c != 'I') {
                partial[slot][k] = c;
            }
        }
        members[slot].push_back(p);
    }
    TpbGrouping out;
    for (std::size_t g = 0; g < partial.size(); ++g) {
        std::replace(partial[g].begin(), partial[g].end(), '?', 'Z');
        Tpb basis(partial[g]);
        for (const auto &p : members[g]) {
            out.host.emplace(p, basis);
        }
        out.groups.emplace(std::move(basis), std::move(members[g]));
    }
    return out;
}

}  // namespace detail

// Greedy first-fit grouping over strings sorted by descending |weight|
// (ties broken by string order). Unconstrained qubits default to Z.
inline TpbGrouping group_tpb(const PauliSum &weighted) {
    std::vector<std::pair<PauliString, double>> items(weighted.terms().begin(), weighted.terms().end());
    std::stable_sort(items.begin(), items.end(),
                     [](const auto &a, const auto &b) { return std::abs(a.second) > std::abs(b.second); });
    std::vector<PauliString> ordered;
    ordered.reserve(items.size());
    for (auto &[p, w] : items) {
        ordered.push_back(p);
    }
    return detail::group_sorted(ordered, weighted.num_qubits());
}

// Unweighted variant: strings are taken in lexicographic order.
inline TpbGrouping group_tpb(std::span<const PauliString> strings) {
    if (strings.empty()) {
        return {};
    }
    std::set<PauliString> unique;
    for (const auto &p : strings) {
        unique.insert(p.without_phase());
    }
    return detail::group_sorted({unique.begin(), unique.end()}, strings.front().num_qubits());
}

}  // namespace fcqem
