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

// Independent dense oracles and seeded random generators shared by the tests.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "fcqem.hpp"

namespace fcqem::testing {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// 2x2 Pauli matrices by letter.
inline CMatrix letter_matrix(char c) {
    CMatrix m(2, 2);
    const Complex i(0, 1);
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -i, i, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
    }
    return m;
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

// Kronecker product of letter matrices, qubit 0 leftmost (most significant).
inline CMatrix string_matrix(const std::string &letters) {
    CMatrix m = CMatrix::Identity(1, 1);
    for (char c : letters) {
        m = kron(m, letter_matrix(c));
    }
    return m;
}

inline CMatrix string_matrix(const PauliString &p) {
    static const Complex phases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return phases[p.phase() & 3] * string_matrix(p.str());
}

inline CMatrix sum_matrix(const PauliSum &s) {
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits();
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto &[p, w] : s.terms()) {
        m += w * string_matrix(p.str());
    }
    return m;
}

inline std::string random_letters(std::size_t n, std::mt19937_64 &rng, const std::string &alphabet = "IXYZ") {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s(n, 'I');
    for (auto &c : s) {
        c = alphabet[pick(rng)];
    }
    return s;
}

inline double uniform(std::mt19937_64 &rng, double lo = -1, double hi = 1) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline PauliSum random_pauli_sum(std::size_t n, std::size_t terms, std::mt19937_64 &rng,
                                 const std::string &alphabet = "IXYZ") {
    PauliSum s(n);
    for (std::size_t t = 0; t < terms; ++t) {
        s.add(PauliString::from_str(random_letters(n, rng, alphabet)), uniform(rng));
    }
    return s;
}

// Random Hermitian generator rescaled to unit spectral norm.
inline PauliSum random_generator(std::size_t n, std::size_t terms, std::mt19937_64 &rng) {
    const PauliSum raw = random_pauli_sum(n, terms, rng);
    const double norm = Eigen::SelfAdjointEigenSolver<CMatrix>(sum_matrix(raw)).eigenvalues().cwiseAbs().maxCoeff();
    PauliSum out(n);
    for (const auto &[p, w] : raw.terms()) {
        out.add(p, w / norm);
    }
    return out;
}

inline CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

// Random mixed state of the given rank (Ginibre ensemble).
inline DensityMatrix random_density(std::size_t n, std::mt19937_64 &rng, Eigen::Index rank = 0) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    const CMatrix a = random_complex(dim, rank ? rank : dim, rng);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    return DensityMatrix::from_matrix(rho);
}

inline DensityMatrix random_diagonal_density(std::size_t n, std::mt19937_64 &rng) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXd d(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        d(i) = uniform(rng, 0, 1);
    }
    d /= d.sum();
    return DensityMatrix::from_matrix(d.cast<Complex>().asDiagonal().toDenseMatrix());
}

inline CMatrix random_hermitian(Eigen::Index dim, std::mt19937_64 &rng) {
    const CMatrix a = random_complex(dim, dim, rng);
    return 0.5 * (a + a.adjoint());
}

// Pauli decomposition of a dense Hermitian matrix: w_P = tr(P A) / 2^n.
inline PauliSum pauli_decompose(const CMatrix &a, std::size_t n) {
    PauliSum s(n);
    const std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < count; ++code) {
        std::string letters(n, 'I');
        for (std::size_t k = 0; k < n; ++k) {
            letters[k] = "IXYZ"[(code >> (2 * k)) & 3];
        }
        const double w = (string_matrix(letters) * a).trace().real() / static_cast<double>(a.rows());
        s.add(PauliString::from_str(letters), w);
    }
    return s;
}

// Exact distributions of `rho` in the given bases.
inline MeasurementSet exact_set(const DensityMatrix &rho, const std::vector<Tpb> &bases) {
    MeasurementSet ms(rho.num_qubits());
    for (const auto &b : bases) {
        ms.add(measure_probs(rho, b));
    }
    return ms;
}

inline MeasurementSet exact_set_for(const DensityMatrix &rho, const PauliSum &m) {
    std::vector<Tpb> bases = group_tpb(m).bases();
    const Tpb z = Tpb::all_z(rho.num_qubits());
    if (std::find(bases.begin(), bases.end(), z) == bases.end()) {
        bases.push_back(z);
    }
    return exact_set(rho, bases);
}

// Dense probabilities of `rho` in `basis`: diag(U rho U^dagger) with U built
// letter by letter.
inline std::vector<double> basis_probs(const CMatrix &rho, const std::string &basis) {
    const double r = 1 / std::sqrt(2.0);
    CMatrix u = CMatrix::Identity(1, 1);
    for (char c : basis) {
        CMatrix l(2, 2);
        if (c == 'X') {
            l << r, r, r, -r;
        } else if (c == 'Y') {
            l << r, Complex(0, -r), r, Complex(0, r);
        } else {
            l << 1, 0, 0, 1;
        }
        u = kron(u, l);
    }
    const CMatrix rot = u * rho * u.adjoint();
    std::vector<double> p(static_cast<std::size_t>(rot.rows()));
    for (Eigen::Index i = 0; i < rot.rows(); ++i) {
        p[static_cast<std::size_t>(i)] = rot(i, i).real();
    }
    return p;
}

}  // namespace fcqem::testing
