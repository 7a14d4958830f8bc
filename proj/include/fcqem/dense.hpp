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
#include <complex>
#include <cstdint>

#include "fcqem/errors.hpp"
#include "fcqem/pauli.hpp"

namespace fcqem {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace dense {

// Largest register for which dense 2^n x 2^n operator matrices are built.
inline constexpr std::size_t kMaxOperatorQubits = 12;

inline void require_operator_capacity(std::size_t n) {
    if (n > kMaxOperatorQubits) {
        throw CapacityError("dense operator on " + std::to_string(n) + " qubits exceeds limit of " +
                            std::to_string(kMaxOperatorQubits));
    }
}

// i^k as a complex number.
inline Complex i_pow(unsigned k) {
    static constexpr Complex unit[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return unit[k & 3];
}

// Matrix element of a Pauli string acting on basis state `col`: the only
// nonzero entry of column `col` sits in row col ^ x_index.
struct PauliAction {
    std::uint64_t x_index;
    std::uint64_t z_index;
    Complex base;

    explicit PauliAction(const PauliString &p)
        : x_index(p.x_mask().to_index()),
          z_index(p.z_mask().to_index()),
          base(i_pow(p.phase() + static_cast<unsigned>(p.count_y()))) {
    }
    Complex value(std::uint64_t col) const {
        return (std::popcount(col & z_index) & 1) ? -base : base;
    }
};

inline CMatrix pauli_matrix(const PauliString &p) {
    require_operator_capacity(p.num_qubits());
    const std::uint64_t dim = std::uint64_t{1} << p.num_qubits();
    PauliAction act(p);
    CMatrix m = CMatrix::Zero(dim, dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        m(col ^ act.x_index, col) = act.value(col);
    }
    return m;
}

inline CMatrix to_matrix(const PauliSum &s) {
    require_operator_capacity(s.num_qubits());
    const std::uint64_t dim = std::uint64_t{1} << s.num_qubits();
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto &[p, w] : s.terms()) {
        PauliAction act(p);
        for (std::uint64_t col = 0; col < dim; ++col) {
            m(col ^ act.x_index, col) += w * act.value(col);
        }
    }
    return m;
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

// Single-qubit rotation taking the letter's eigenbasis to the computational
// basis: H for X, H S^dagger for Y, identity for Z.
inline Eigen::Matrix2cd basis_change(char letter) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd u;
    switch (letter) {
        case 'X':
            u << r, r, r, -r;
            break;
        case 'Y':
            u << r, Complex(0, -r), r, Complex(0, r);
            break;
        case 'Z':
        case 'I':
            u = Eigen::Matrix2cd::Identity();
            break;
        default:
            throw ArgumentError("invalid basis letter '" + std::string(1, letter) + "'");
    }
    return u;
}

inline CMatrix basis_rotation(const std::string &letters) {
    require_operator_capacity(letters.size());
    CMatrix u = CMatrix::Identity(1, 1);
    for (char c : letters) {
        u = kron(u, basis_change(c));
    }
    return u;
}

// Per-qubit rotation diagonalising a Pauli string; identity positions take
// the letter from `fill` (same length) so the rotation matches a measurement
// basis that hosts the string.
inline CMatrix diagonalizing_rotation(const PauliString &p, const std::string &fill) {
    std::string letters = fill;
    for (std::size_t k = 0; k < p.num_qubits(); ++k) {
        if (p.letter(k) != 'I') {
            letters[k] = p.letter(k);
        }
    }
    return basis_rotation(letters);
}

}  // namespace dense
}  // namespace fcqem
