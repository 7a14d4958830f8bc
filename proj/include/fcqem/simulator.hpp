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

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fcqem/circuit.hpp"
#include "fcqem/dense.hpp"
#include "fcqem/distribution.hpp"
#include "fcqem/errors.hpp"
#include "fcqem/pauli.hpp"
#include "fcqem/rng.hpp"

namespace fcqem {

inline constexpr std::size_t kMaxStateVectorQubits = 20;
inline constexpr std::size_t kMaxDensityQubits = 12;

using Mat2 = std::array<Complex, 4>;
using Mat4 = std::array<Complex, 16>;

namespace kernels {

// Applies a 2x2 matrix to the bit at `pos` of every index of `buf`.
inline void apply_1q(std::span<Complex> buf, unsigned pos, const Mat2 &u) {
    const std::size_t stride = std::size_t{1} << pos;
    for (std::size_t base = 0; base < buf.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            Complex a = buf[i], b = buf[i + stride];
            buf[i] = u[0] * a + u[1] * b;
            buf[i + stride] = u[2] * a + u[3] * b;
        }
    }
}

// Applies a 4x4 matrix; bit `pos_a` is the high bit of the local index.
inline void apply_2q(std::span<Complex> buf, unsigned pos_a, unsigned pos_b, const Mat4 &u) {
    const std::size_t ma = std::size_t{1} << pos_a, mb = std::size_t{1} << pos_b;
    for (std::size_t i = 0; i < buf.size(); ++i) {
        if (i & (ma | mb)) {
            continue;
        }
        const std::size_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
        Complex v[4] = {buf[idx[0]], buf[idx[1]], buf[idx[2]], buf[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            buf[idx[r]] = u[4 * r] * v[0] + u[4 * r + 1] * v[1] + u[4 * r + 2] * v[2] + u[4 * r + 3] * v[3];
        }
    }
}

inline Mat2 conj(const Mat2 &u) {
    return {std::conj(u[0]), std::conj(u[1]), std::conj(u[2]), std::conj(u[3])};
}
inline Mat4 conj(const Mat4 &u) {
    Mat4 r;
    for (int i = 0; i < 16; ++i) {
        r[i] = std::conj(u[i]);
    }
    return r;
}

inline Mat2 pauli(char letter) {
    const Complex i(0, 1);
    switch (letter) {
        case 'X':
            return {0, 1, 1, 0};
        case 'Y':
            return {0, -i, i, 0};
        case 'Z':
            return {1, 0, 0, -1};
        default:
            return {1, 0, 0, 1};
    }
}

inline Mat2 basis_change(char letter) {
    auto m = dense::basis_change(letter);
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

inline Mat2 gate_1q(const Gate &g) {
    const Complex i(0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
    switch (g.kind) {
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::X:
            return pauli('X');
        case GateKind::Y:
            return pauli('Y');
        case GateKind::Z:
            return pauli('Z');
        case GateKind::S:
            return {1, 0, 0, i};
        case GateKind::RX:
            return {c, -i * s, -i * s, c};
        case GateKind::RY:
            return {c, -s, s, c};
        case GateKind::RZ:
            return {std::exp(-i * (g.angle / 2)), 0, 0, std::exp(i * (g.angle / 2))};
        default:
            throw ArgumentError("not a single-qubit gate: " + std::string(gate_name(g.kind)));
    }
}

inline Mat4 gate_2q(const Gate &g) {
    const Complex i(0, 1);
    switch (g.kind) {
        case GateKind::CNOT:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
        case GateKind::CZ:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
        case GateKind::ISWAP:
            return {1, 0, 0, 0, 0, 0, i, 0, 0, i, 0, 0, 0, 0, 0, 1};
        default:
            throw ArgumentError("not a two-qubit gate: " + std::string(gate_name(g.kind)));
    }
}

}  // namespace kernels

// Pure state; amplitude index has qubit 0 as its most significant bit.
struct StateVector {
    std::size_t num_qubits = 0;
    std::vector<Complex> amps;

    static StateVector zero(std::size_t n) {
        if (n == 0 || n > kMaxStateVectorQubits) {
            throw CapacityError("statevector on " + std::to_string(n) + " qubits (limit " +
                                std::to_string(kMaxStateVectorQubits) + ")");
        }
        StateVector s{n, std::vector<Complex>(std::size_t{1} << n, 0.0)};
        s.amps[0] = 1.0;
        return s;
    }

    double norm() const {
        double s = 0;
        for (const auto &a : amps) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    void apply(const Gate &g) {
        const auto n = static_cast<unsigned>(num_qubits);
        if (g.arity() == 1) {
            kernels::apply_1q(amps, n - 1 - static_cast<unsigned>(g.qubits[0]), kernels::gate_1q(g));
        } else {
            kernels::apply_2q(amps, n - 1 - static_cast<unsigned>(g.qubits[0]),
                              n - 1 - static_cast<unsigned>(g.qubits[1]), kernels::gate_2q(g));
        }
    }

    CVector to_eigen() const {
        return Eigen::Map<const CVector>(amps.data(), static_cast<Eigen::Index>(amps.size()));
    }
};

// Mixed state stored row-major; element (r, c) at r * dim + c.
class DensityMatrix {
   public:
    DensityMatrix() = default;

    static DensityMatrix zero_state(std::size_t n) {
        DensityMatrix d(n);
        d.data_[0] = 1.0;
        return d;
    }

    static DensityMatrix from_pure(const StateVector &psi) {
        DensityMatrix d(psi.num_qubits);
        const std::size_t dim = d.dim();
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                d.data_[r * dim + c] = psi.amps[r] * std::conj(psi.amps[c]);
            }
        }
        return d;
    }

    static DensityMatrix from_matrix(const CMatrix &m) {
        std::size_t n = 0;
        while ((std::size_t{1} << n) < static_cast<std::size_t>(m.rows())) {
            ++n;
        }
        if (m.rows() != m.cols() || (std::size_t{1} << n) != static_cast<std::size_t>(m.rows()) || n == 0) {
            throw DimensionError("density matrix must be square with power-of-two dimension");
        }
        DensityMatrix d(n);
        for (std::size_t r = 0; r < d.dim(); ++r) {
            for (std::size_t c = 0; c < d.dim(); ++c) {
                d.data_[r * d.dim() + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
        return d;
    }

    static DensityMatrix maximally_mixed(std::size_t n) {
        DensityMatrix d(n);
        for (std::size_t r = 0; r < d.dim(); ++r) {
            d.data_[r * d.dim() + r] = 1.0 / static_cast<double>(d.dim());
        }
        return d;
    }

    std::size_t num_qubits() const noexcept {
        return n_;
    }
    std::size_t dim() const noexcept {
        return std::size_t{1} << n_;
    }
    Complex operator()(std::size_t r, std::size_t c) const {
        return data_[r * dim() + c];
    }
    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * dim() + c];
    }
    std::span<Complex> raw() noexcept {
        return data_;
    }
    std::span<const Complex> raw() const noexcept {
        return data_;
    }

    Complex trace() const {
        Complex t = 0;
        for (std::size_t r = 0; r < dim(); ++r) {
            t += (*this)(r, r);
        }
        return t;
    }

    double purity() const {
        // tr(rho^2) = sum |rho_rc|^2 for Hermitian rho.
        double s = 0;
        for (const auto &v : data_) {
            s += std::norm(v);
        }
        return s;
    }

    double hermiticity_error() const {
        double e = 0;
        for (std::size_t r = 0; r < dim(); ++r) {
            for (std::size_t c = r; c < dim(); ++c) {
                e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return e;
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(to_eigen(), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    std::vector<double> diagonal() const {
        std::vector<double> d(dim());
        for (std::size_t r = 0; r < dim(); ++r) {
            d[r] = (*this)(r, r).real();
        }
        return d;
    }

    CMatrix to_eigen() const {
        CMatrix m(dim(), dim());
        for (std::size_t r = 0; r < dim(); ++r) {
            for (std::size_t c = 0; c < dim(); ++c) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c);
            }
        }
        return m;
    }

    // rho -> U rho U^dagger for U acting on qubit q.
    void apply_1q(std::size_t q, const Mat2 &u) {
        const auto n = static_cast<unsigned>(n_);
        kernels::apply_1q(data_, 2 * n - 1 - static_cast<unsigned>(q), u);
        kernels::apply_1q(data_, n - 1 - static_cast<unsigned>(q), kernels::conj(u));
    }

    void apply_2q(std::size_t a, std::size_t b, const Mat4 &u) {
        const auto n = static_cast<unsigned>(n_);
        const auto qa = static_cast<unsigned>(a), qb = static_cast<unsigned>(b);
        kernels::apply_2q(data_, 2 * n - 1 - qa, 2 * n - 1 - qb, u);
        kernels::apply_2q(data_, n - 1 - qa, n - 1 - qb, kernels::conj(u));
    }

    void apply(const Gate &g) {
        if (g.arity() == 1) {
            apply_1q(g.qubits[0], kernels::gate_1q(g));
        } else {
            apply_2q(g.qubits[0], g.qubits[1], kernels::gate_2q(g));
        }
    }

    // this = a * this + b * other
    void blend(Complex a, const DensityMatrix &other, Complex b) {
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] = a * data_[i] + b * other.data_[i];
        }
    }

   private:
    explicit DensityMatrix(std::size_t n) : n_(n) {
        if (n == 0 || n > kMaxDensityQubits) {
            throw CapacityError("density matrix on " + std::to_string(n) + " qubits (limit " +
                                std::to_string(kMaxDensityQubits) + ")");
        }
        data_.assign(dim() * dim(), 0.0);
    }

    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

struct NoiseModel {
    double global_depolarizing = 0.0;
    double depolarizing_1q = 0.0;  // after each RX/RY/RZ
    double depolarizing_2q = 0.0;  // after each CNOT/CZ/ISWAP
    double readout_flip = 0.0;
    std::vector<double> readout_flip_per_qubit;  // overrides readout_flip when non-empty
    double pauli_x = 0.0, pauli_y = 0.0, pauli_z = 0.0;  // per qubit, per layer

    void validate(std::size_t num_qubits) const {
        auto unit = [](double p, const char *what) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ArgumentError(std::string(what) + " must be in [0, 1], got " + std::to_string(p));
            }
        };
        unit(global_depolarizing, "global depolarizing probability");
        unit(depolarizing_1q, "one-qubit depolarizing rate");
        unit(depolarizing_2q, "two-qubit depolarizing rate");
        unit(readout_flip, "readout flip probability");
        for (double q : readout_flip_per_qubit) {
            unit(q, "readout flip probability");
        }
        if (!readout_flip_per_qubit.empty() && readout_flip_per_qubit.size() != num_qubits) {
            throw DimensionError("per-qubit readout flips given for " + std::to_string(readout_flip_per_qubit.size()) +
                                 " qubits, register has " + std::to_string(num_qubits));
        }
        unit(pauli_x, "Pauli X probability");
        unit(pauli_y, "Pauli Y probability");
        unit(pauli_z, "Pauli Z probability");
        if (pauli_x + pauli_y + pauli_z > 1.0 + 1e-15) {
            throw ArgumentError("Pauli channel probabilities sum above 1");
        }
    }

    double readout(std::size_t q) const {
        return readout_flip_per_qubit.empty() ? readout_flip : readout_flip_per_qubit[q];
    }
    bool has_pauli_channel() const {
        return pauli_x > 0 || pauli_y > 0 || pauli_z > 0;
    }
    bool has_gate_noise() const {
        return depolarizing_1q > 0 || depolarizing_2q > 0 || has_pauli_channel();
    }
};

inline StateVector run_circuit(const Circuit &c) {
    StateVector s = StateVector::zero(c.num_qubits());
    for (const auto &g : c.gates()) {
        s.apply(g);
    }
    return s;
}

inline DensityMatrix apply_global_depolarizing(DensityMatrix rho, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ArgumentError("depolarizing probability must be in [0, 1], got " + std::to_string(p));
    }
    const double diag = p / static_cast<double>(rho.dim());
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            rho(r, c) *= 1.0 - p;
        }
        rho(r, r) += diag;
    }
    return rho;
}

// Uniform depolarizing on the listed qubits: with probability `rate` one of
// the 4^k - 1 non-identity Paulis is applied, each equally likely.
inline void apply_local_depolarizing(DensityMatrix &rho, std::span<const std::size_t> qubits, double rate) {
    if (rate <= 0) {
        return;
    }
    static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
    const std::size_t k = qubits.size();
    const std::size_t count = (std::size_t{1} << (2 * k)) - 1;
    const DensityMatrix original = rho;
    rho.blend(1.0 - rate, original, 0.0);
    for (std::size_t code = 1; code <= count; ++code) {
        DensityMatrix term = original;
        for (std::size_t j = 0; j < k; ++j) {
            char l = letters[(code >> (2 * j)) & 3];
            if (l != 'I') {
                term.apply_1q(qubits[j], kernels::pauli(l));
            }
        }
        rho.blend(1.0, term, rate / static_cast<double>(count));
    }
}

inline void apply_pauli_channel(DensityMatrix &rho, std::size_t q, double px, double py, double pz) {
    if (px + py + pz <= 0) {
        return;
    }
    const DensityMatrix original = rho;
    rho.blend(1.0 - px - py - pz, original, 0.0);
    const std::pair<char, double> parts[] = {{'X', px}, {'Y', py}, {'Z', pz}};
    for (const auto &[l, p] : parts) {
        if (p > 0) {
            DensityMatrix term = original;
            term.apply_1q(q, kernels::pauli(l));
            rho.blend(1.0, term, p);
        }
    }
}

// Gate-by-gate noisy evolution from |0...0>. Within each ASAP layer every
// gate is followed by local depolarizing on its support (2q rate after
// two-qubit gates, 1q rate after rotations); the Pauli channel then acts on
// the layer's touched qubits, and once more on all qubits before
// measurement. Global depolarizing is applied last. Readout error is left to
// measure_probs.
inline DensityMatrix run_noisy(const Circuit &c, const NoiseModel &nm) {
    nm.validate(c.num_qubits());
    DensityMatrix rho = DensityMatrix::zero_state(c.num_qubits());
    for (const auto &layer : c.layers()) {
        std::vector<std::size_t> touched;
        for (const auto &g : layer) {
            rho.apply(g);
            std::span<const std::size_t> support(g.qubits.data(), g.arity());
            if (g.arity() == 2) {
                apply_local_depolarizing(rho, support, nm.depolarizing_2q);
            } else if (is_rotation(g.kind)) {
                apply_local_depolarizing(rho, support, nm.depolarizing_1q);
            }
            touched.insert(touched.end(), support.begin(), support.end());
        }
        if (nm.has_pauli_channel()) {
            for (auto q : touched) {
                apply_pauli_channel(rho, q, nm.pauli_x, nm.pauli_y, nm.pauli_z);
            }
        }
    }
    if (nm.has_pauli_channel()) {
        for (std::size_t q = 0; q < c.num_qubits(); ++q) {
            apply_pauli_channel(rho, q, nm.pauli_x, nm.pauli_y, nm.pauli_z);
        }
    }
    if (nm.global_depolarizing > 0) {
        rho = apply_global_depolarizing(std::move(rho), nm.global_depolarizing);
    }
    return rho;
}

namespace detail {

inline void check_basis(const Tpb &basis, std::size_t n) {
    if (basis.num_qubits() != n) {
        throw DimensionError("basis " + basis.str() + " has " + std::to_string(basis.num_qubits()) +
                             " letters for a " + std::to_string(n) + "-qubit state");
    }
}

// Independent symmetric bit flips, qubit by qubit.
inline void apply_readout(std::vector<double> &probs, std::size_t n, const NoiseModel &nm) {
    for (std::size_t q = 0; q < n; ++q) {
        const double f = nm.readout(q);
        if (f <= 0) {
            continue;
        }
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (i & bit) {
                continue;
            }
            double a = probs[i], b = probs[i | bit];
            probs[i] = (1 - f) * a + f * b;
            probs[i | bit] = f * a + (1 - f) * b;
        }
    }
}

}  // namespace detail

// Outcome probabilities in `basis`, with global depolarizing and readout
// flips from `nm` (gate-level noise needs a DensityMatrix from run_noisy).
inline ProbDist measure_probs(const StateVector &psi, const Tpb &basis, const NoiseModel &nm = {}) {
    detail::check_basis(basis, psi.num_qubits);
    nm.validate(psi.num_qubits);
    std::vector<Complex> amps = psi.amps;
    const auto n = static_cast<unsigned>(psi.num_qubits);
    for (unsigned q = 0; q < n; ++q) {
        if (basis.letters[q] != 'Z') {
            kernels::apply_1q(amps, n - 1 - q, kernels::basis_change(basis.letters[q]));
        }
    }
    std::vector<double> probs(amps.size());
    const double p = nm.global_depolarizing;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        probs[i] = (1 - p) * std::norm(amps[i]) + p / static_cast<double>(amps.size());
    }
    detail::apply_readout(probs, psi.num_qubits, nm);
    return ProbDist::exact_dense(basis, probs);
}

// Outcome probabilities of a density matrix in `basis`, with readout flips
// from `nm`. Other noise is assumed to be already applied by run_noisy.
inline ProbDist measure_probs(const DensityMatrix &rho, const Tpb &basis, const NoiseModel &nm = {}) {
    detail::check_basis(basis, rho.num_qubits());
    NoiseModel readout_only;
    readout_only.readout_flip = nm.readout_flip;
    readout_only.readout_flip_per_qubit = nm.readout_flip_per_qubit;
    readout_only.validate(rho.num_qubits());
    std::vector<double> probs;
    if (basis == Tpb::all_z(rho.num_qubits())) {
        probs = rho.diagonal();
    } else {
        DensityMatrix rotated = rho;
        for (std::size_t q = 0; q < rho.num_qubits(); ++q) {
            if (basis.letters[q] != 'Z') {
                rotated.apply_1q(q, kernels::basis_change(basis.letters[q]));
            }
        }
        probs = rotated.diagonal();
    }
    for (auto &p : probs) {
        if (p < 0 && p > -1e-12) {
            p = 0;
        }
    }
    detail::apply_readout(probs, rho.num_qubits(), readout_only);
    return ProbDist::exact_dense(basis, probs);
}

// Draws `shots` outcomes from `dist`. The stream is derived from
// (seed, basis, stream_index), so equal arguments give identical counts.
inline ProbDist sample(const ProbDist &dist, std::uint64_t shots, std::uint64_t seed,
                       std::uint64_t stream_index = 0) {
    if (shots == 0) {
        throw ArgumentError("shots must be positive");
    }
    const auto &probs = dist.probs();
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    if (!(acc > 0)) {
        throw DegenerateInputError("cannot sample from a distribution with zero total mass");
    }
    std::vector<std::uint64_t> counts(probs.size(), 0);
    Rng rng = make_rng(seed, dist.basis().str(), stream_index);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        while (probs[idx] <= 0 && idx > 0) {
            --idx;  // only reachable through rounding at the top of the cdf
        }
        ++counts[idx];
    }
    std::vector<std::pair<Bitstring, std::uint64_t>> entries;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i]) {
            entries.emplace_back(dist.outcomes()[i], counts[i]);
        }
    }
    return ProbDist::from_counts(dist.basis(), std::move(entries));
}

// Samples every distribution of an exact set; basis k in map order uses
// stream index k.
inline MeasurementSet sample_all(const MeasurementSet &exact, std::uint64_t shots, std::uint64_t seed) {
    MeasurementSet out(exact.num_qubits());
    out.metadata() = exact.metadata();
    out.metadata()["seed"] = std::to_string(seed);
    out.metadata()["shots"] = std::to_string(shots);
    std::uint64_t k = 0;
    for (const auto &[b, d] : exact.dists()) {
        out.add(sample(d, shots, seed, k++));
    }
    return out;
}

template <typename State>
MeasurementSet measure_all(const State &state, std::span<const Tpb> bases, const NoiseModel &nm = {}) {
    std::size_t n;
    if constexpr (std::is_same_v<State, StateVector>) {
        n = state.num_qubits;
    } else {
        n = state.num_qubits();
    }
    MeasurementSet ms(n);
    for (const auto &b : bases) {
        ms.add(measure_probs(state, b, nm));
    }
    return ms;
}

inline Complex expectation(const StateVector &psi, const PauliString &p) {
    dense::PauliAction act(p);
    Complex s = 0;
    for (std::uint64_t j = 0; j < psi.amps.size(); ++j) {
        s += std::conj(psi.amps[j ^ act.x_index]) * act.value(j) * psi.amps[j];
    }
    return s;
}

inline double expectation(const StateVector &psi, const PauliSum &h) {
    double s = 0;
    for (const auto &[p, w] : h.terms()) {
        s += w * expectation(psi, p).real();
    }
    return s;
}

inline Complex expectation(const DensityMatrix &rho, const PauliString &p) {
    dense::PauliAction act(p);
    Complex s = 0;
    for (std::uint64_t m = 0; m < rho.dim(); ++m) {
        s += act.value(m) * rho(m, m ^ act.x_index);
    }
    return s;
}

inline double expectation(const DensityMatrix &rho, const PauliSum &h) {
    double s = 0;
    for (const auto &[p, w] : h.terms()) {
        s += w * expectation(rho, p).real();
    }
    return s;
}

struct GroundState {
    double energy;
    StateVector state;
};

// Exact diagonalisation of the dense matrix of `h`.
inline GroundState exact_ground_state(const PauliSum &h) {
    const std::size_t n = h.num_qubits();
    if (n == 0 || n > dense::kMaxOperatorQubits) {
        throw CapacityError("exact diagonalisation on " + std::to_string(n) + " qubits (limit " +
                            std::to_string(dense::kMaxOperatorQubits) + ")");
    }
    bool real = true;
    for (const auto &[p, w] : h.terms()) {
        real = real && p.count_y() % 2 == 0;
    }
    GroundState gs{0.0, StateVector{n, {}}};
    if (real) {
        Eigen::MatrixXd m = dense::to_matrix(h).real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        gs.energy = es.eigenvalues()(0);
        const auto &v = es.eigenvectors().col(0);
        gs.state.amps.assign(v.data(), v.data() + v.size());
    } else {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(dense::to_matrix(h));
        gs.energy = es.eigenvalues()(0);
        const auto &v = es.eigenvectors().col(0);
        gs.state.amps.assign(v.data(), v.data() + v.size());
    }
    return gs;
}

}  // namespace fcqem
