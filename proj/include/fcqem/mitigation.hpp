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
#include <cmath>
#include <concepts>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fcqem/dense.hpp"
#include "fcqem/distribution.hpp"
#include "fcqem/errors.hpp"
#include "fcqem/pauli.hpp"
#include "fcqem/simulator.hpp"

namespace fcqem {

// Register limit for routines that work on the doubled (two-copy) space.
inline constexpr std::size_t kMaxDoubledQubits = kMaxDensityQubits / 2;
// Explicit 4^n x 4^n doubled-space matrices are only built up to this size.
inline constexpr std::size_t kMaxExplicitDoubledQubits = 5;

// Relative threshold under which a correction denominator counts as zero.
inline constexpr double kZeroDenominator = 1e-14;

enum class Normalization {
    // Square and renormalise each basis distribution on its own.
    PerBasis,
    // Divide every term by the squared mass of the preferred-basis distribution.
    GlobalZ,
};

enum class CopyMode {
    // One distribution duplicated: joint weight p_i^2.
    SelfSquare,
    // Two independently sampled distributions combined pairwise.
    TwoCopy,
};

inline std::string to_string(Normalization n) {
    return n == Normalization::PerBasis ? "per-basis" : "global-z";
}
inline std::string to_string(CopyMode c) {
    return c == CopyMode::SelfSquare ? "self-square" : "two-copy";
}

struct FcqemConfig {
    Normalization normalization = Normalization::PerBasis;
    std::optional<Tpb> preferred_basis;  // all-Z when unset
    CopyMode copy = CopyMode::SelfSquare;

    Tpb preferred(std::size_t n) const {
        if (preferred_basis) {
            if (preferred_basis->num_qubits() != n) {
                throw DimensionError("preferred basis " + preferred_basis->str() + " does not match " +
                                     std::to_string(n) + " qubits");
            }
            return *preferred_basis;
        }
        return Tpb::all_z(n);
    }
};

struct CorrectedValue {
    double value = 0;
    double numerator = 0;
    double denominator = 1;
    Normalization normalization = Normalization::PerBasis;
    CopyMode copy = CopyMode::SelfSquare;
    // |value - identity weight| exceeds the l1 norm of the other weights, so
    // the value lies outside any possible spectral range of the observable.
    bool exceeds_norm_bound = false;
};

// q_i = p_i^2 / sum_j p_j^2.
inline ProbDist square_normalize(const ProbDist &dist) {
    double total = 0, sq = 0;
    for (double p : dist.probs()) {
        total += p;
        sq += p * p;
    }
    if (!(total > 0) || sq <= 0) {
        throw DegenerateInputError("cannot square-normalize an all-zero distribution (basis " + dist.basis().str() +
                                   ")");
    }
    std::vector<double> q;
    q.reserve(dist.size());
    for (double p : dist.probs()) {
        q.push_back(p * p / sq);
    }
    return dist.with_probs(std::move(q));
}

struct JointSums {
    double numerator = 0;
    double denominator = 0;

    double ratio() const {
        return numerator / denominator;
    }
};

namespace detail {

// Pairwise joint weights t_i of two distributions over the union of their
// supports, in outcome order:
//   t_i = 1/2 (2 p_i p'_i + sum_{j<i} (p_i p'_j - p'_i p_j)
//                        + sum_{j>i} (p'_i p_j - p_i p'_j))
// evaluated with running prefix sums. Outcomes outside both supports have
// t_i = 0 and are skipped.
inline void joint_weights(const ProbDist &p, const ProbDist &q, std::vector<const Bitstring *> &outcomes,
                          std::vector<double> &t) {
    if (p.basis() != q.basis()) {
        throw DimensionError("two-copy distributions measured in different bases: " + p.basis().str() + " vs " +
                             q.basis().str());
    }
    const auto &po = p.outcomes(), &qo = q.outcomes();
    const auto &pp = p.probs(), &qp = q.probs();
    std::vector<double> a, b;
    outcomes.clear();
    std::size_t i = 0, j = 0;
    while (i < po.size() || j < qo.size()) {
        if (j == qo.size() || (i < po.size() && po[i] < qo[j])) {
            outcomes.push_back(&po[i]);
            a.push_back(pp[i++]);
            b.push_back(0);
        } else if (i == po.size() || qo[j] < po[i]) {
            outcomes.push_back(&qo[j]);
            a.push_back(0);
            b.push_back(qp[j++]);
        } else {
            outcomes.push_back(&po[i]);
            a.push_back(pp[i++]);
            b.push_back(qp[j++]);
        }
    }
    double total_a = 0, total_b = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        total_a += a[k];
        total_b += b[k];
    }
    t.assign(a.size(), 0);
    double below_a = 0, below_b = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double above_a = total_a - below_a - a[k];
        const double above_b = total_b - below_b - b[k];
        t[k] = 0.5 * (2 * a[k] * b[k] + a[k] * below_b - b[k] * below_a + b[k] * above_a - a[k] * above_b);
        below_a += a[k];
        below_b += b[k];
    }
}

}  // namespace detail

// Two-copy corrector for one basis: numerator sum_i lambda_i t_i and
// denominator sum_i t_i. With p == p' this is sum lambda p^2 / sum p^2.
template <typename Eigenvalue>
    requires std::invocable<Eigenvalue, const Bitstring &>
JointSums fcqem_joint(const ProbDist &p, const ProbDist &p2, Eigenvalue &&eigval) {
    if (p.num_qubits() != p2.num_qubits()) {
        throw DimensionError("two-copy distributions differ in size");
    }
    std::vector<const Bitstring *> outcomes;
    std::vector<double> t;
    detail::joint_weights(p, p2, outcomes, t);
    JointSums s;
    for (std::size_t k = 0; k < t.size(); ++k) {
        s.numerator += static_cast<double>(eigval(*outcomes[k])) * t[k];
        s.denominator += t[k];
    }
    return s;
}

inline JointSums fcqem_joint(const ProbDist &p, const ProbDist &p2, const PauliString &observable) {
    return fcqem_joint(p, p2, [&](const Bitstring &o) { return outcome_eigenvalue(observable, o); });
}

namespace detail {

// Outcome weights of one basis after the chosen correction, plus their sum.
struct BasisWeights {
    std::vector<const Bitstring *> outcomes;
    std::vector<double> weights;
    double sum = 0;
    double mass = 0;  // total raw probability, scale for the zero test

    double evaluate(const PauliString &s) const {
        const auto mask = s.support();
        double acc = 0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            acc += outcomes[k]->masked_parity(mask.words()) ? -weights[k] : weights[k];
        }
        return acc;
    }
};

enum class Weighting { Raw, Squared, Joint };

inline BasisWeights basis_weights(const ProbDist &d, Weighting w, const ProbDist *second) {
    BasisWeights bw;
    bw.mass = d.total();
    if (w == Weighting::Joint) {
        joint_weights(d, *second, bw.outcomes, bw.weights);
    } else {
        bw.outcomes.reserve(d.size());
        bw.weights.reserve(d.size());
        for (std::size_t k = 0; k < d.size(); ++k) {
            const double p = d.probs()[k];
            bw.outcomes.push_back(&d.outcomes()[k]);
            bw.weights.push_back(w == Weighting::Raw ? p : p * p);
        }
    }
    for (double x : bw.weights) {
        bw.sum += x;
    }
    return bw;
}

inline void require_denominator(double den, double mass, const std::string &basis) {
    if (!(den > kZeroDenominator * std::max(mass, 1e-300))) {
        throw DegenerateInputError("correction denominator " + std::to_string(den) + " is not positive for basis " +
                                   basis);
    }
}

}  // namespace detail

// Maps each non-identity string to a basis present in the measurement set:
// its basis from greedy grouping of `weighted` when measured, otherwise the
// first measured basis that hosts it. Throws MissingMeasurementError listing
// the grouping bases that would be needed for any unhosted string.
inline std::map<PauliString, Tpb> resolve_hosts(const MeasurementSet &ms, const PauliSum &weighted) {
    if (weighted.num_qubits() != ms.num_qubits()) {
        throw DimensionError("observable on " + std::to_string(weighted.num_qubits()) +
                             " qubits, measurements on " + std::to_string(ms.num_qubits()));
    }
    PauliSum non_identity(weighted.num_qubits());
    for (const auto &[p, w] : weighted.terms()) {
        if (!p.is_identity()) {
            non_identity.add(p, w);
        }
    }
    std::map<PauliString, Tpb> out;
    if (non_identity.empty()) {
        return out;
    }
    TpbGrouping grouping = group_tpb(non_identity);
    std::set<std::string> missing;
    for (const auto &[p, w] : non_identity.terms()) {
        const Tpb &planned = grouping.host.at(p);
        if (ms.contains(planned)) {
            out.emplace(p, planned);
            continue;
        }
        bool found = false;
        for (const auto &[b, d] : ms.dists()) {
            if (b.hosts(p)) {
                out.emplace(p, b);
                found = true;
                break;
            }
        }
        if (!found) {
            missing.insert(planned.str());
        }
    }
    if (!missing.empty()) {
        throw MissingMeasurementError({missing.begin(), missing.end()});
    }
    return out;
}

// Expectation of every string of `weighted` (weights only guide grouping).
//
// Without a corrector the raw estimate sum_j lambda_j p_j is returned. With
// one, strings are corrected as configured: per-basis mode divides by the
// host basis' own squared (or joint) mass, global-Z mode by that of the
// preferred basis. Identity strings are always 1.
inline std::map<PauliString, double> pauli_expectations(const MeasurementSet &ms, const PauliSum &weighted,
                                                        const std::optional<FcqemConfig> &corrector = std::nullopt,
                                                        const MeasurementSet *second = nullptr) {
    const auto hosts = resolve_hosts(ms, weighted);
    detail::Weighting weighting = detail::Weighting::Raw;
    if (corrector) {
        weighting = corrector->copy == CopyMode::TwoCopy ? detail::Weighting::Joint : detail::Weighting::Squared;
        if (weighting == detail::Weighting::Joint) {
            if (!second) {
                throw ArgumentError("two-copy correction needs a second measurement set");
            }
            if (second->num_qubits() != ms.num_qubits()) {
                throw DimensionError("second measurement set differs in qubit count");
            }
        }
    }
    auto second_of = [&](const Tpb &b) -> const ProbDist * {
        if (weighting != detail::Weighting::Joint) {
            return nullptr;
        }
        const ProbDist *d = second->find(b);
        if (!d) {
            throw MissingMeasurementError({b.str()});
        }
        return d;
    };

    std::optional<double> global_den;
    if (corrector && corrector->normalization == Normalization::GlobalZ) {
        const Tpb pref = corrector->preferred(ms.num_qubits());
        const ProbDist *d = ms.find(pref);
        if (!d) {
            throw MissingMeasurementError({pref.str()});
        }
        auto bw = detail::basis_weights(*d, weighting, second_of(pref));
        detail::require_denominator(bw.sum, bw.mass, pref.str());
        global_den = bw.sum;
    }

    std::map<Tpb, detail::BasisWeights> cache;
    std::map<PauliString, double> out;
    for (const auto &[p, w] : weighted.terms()) {
        if (p.is_identity()) {
            out.emplace(p, 1.0);
            continue;
        }
        const Tpb &b = hosts.at(p);
        auto it = cache.find(b);
        if (it == cache.end()) {
            auto bw = detail::basis_weights(*ms.find(b), weighting, second_of(b));
            if (!global_den) {
                detail::require_denominator(bw.sum, bw.mass, b.str());
            }
            it = cache.emplace(b, std::move(bw)).first;
        }
        const double num = it->second.evaluate(p);
        out.emplace(p, num / (global_den ? *global_den : it->second.sum));
    }
    return out;
}

// Uncorrected sum_i w_i <Q_i>.
inline double raw_expectation(const MeasurementSet &ms, const PauliSum &m) {
    const auto ev = pauli_expectations(ms, m);
    double s = 0;
    for (const auto &[p, w] : m.terms()) {
        s += w * ev.at(p);
    }
    return s;
}

// Corrected expectation of M = sum_i w_i Q_i from measured distributions.
// `second` supplies the independent copy for CopyMode::TwoCopy.
inline CorrectedValue fcqem_expectation(const MeasurementSet &ms, const PauliSum &m, const FcqemConfig &cfg,
                                        const MeasurementSet *second = nullptr) {
    const auto ev = pauli_expectations(ms, m, cfg, second);
    CorrectedValue cv;
    cv.normalization = cfg.normalization;
    cv.copy = cfg.copy;
    const double id_weight = m.identity_weight();
    double value = 0, bound = 0;
    for (const auto &[p, w] : m.terms()) {
        value += w * ev.at(p);
        if (!p.is_identity()) {
            bound += std::abs(w);
        }
    }
    cv.value = value;
    if (cfg.normalization == Normalization::GlobalZ) {
        // Recover the shared denominator to report the ratio's parts.
        const Tpb pref = cfg.preferred(ms.num_qubits());
        const ProbDist *d = ms.find(pref);
        const ProbDist *d2 = cfg.copy == CopyMode::TwoCopy ? second->find(pref) : nullptr;
        auto bw = detail::basis_weights(*d, cfg.copy == CopyMode::TwoCopy ? detail::Weighting::Joint
                                                                          : detail::Weighting::Squared,
                                        d2);
        cv.denominator = bw.sum;
        cv.numerator = value * bw.sum;
    } else {
        cv.numerator = value;
        cv.denominator = 1.0;
    }
    cv.exceeds_norm_bound = std::abs(value - id_weight) > bound + 1e-12;
    return cv;
}

namespace detail {

inline void require_doubled_capacity(std::size_t n, std::size_t limit) {
    if (n == 0 || n > limit) {
        throw CapacityError("two-copy dense routine on " + std::to_string(n) + " qubits (limit " +
                            std::to_string(limit) + ")");
    }
}

inline void check_operator(const DensityMatrix &rho, const PauliSum &m) {
    if (m.num_qubits() != rho.num_qubits()) {
        throw DimensionError("observable on " + std::to_string(m.num_qubits()) + " qubits, state on " +
                             std::to_string(rho.num_qubits()));
    }
}

// Sign of the truncated swap operator: +1 when i <= j, -1 when i > j.
inline double swap_sign(std::size_t i, std::size_t j) {
    return i <= j ? 1.0 : -1.0;
}

inline Eigen::VectorXd swap_sign_diagonal(std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::VectorXd d(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            d(static_cast<Eigen::Index>(i * dim + j)) = swap_sign(i, j);
        }
    }
    return d;
}

inline CMatrix symmetrized(const CMatrix &m) {
    const CMatrix id = CMatrix::Identity(m.rows(), m.cols());
    return 0.5 * (dense::kron(m, id) + dense::kron(id, m));
}

}  // namespace detail

// Virtual distillation: tr(M rho^2) / tr(rho^2).
inline double vd_exact(const DensityMatrix &rho, const PauliSum &m) {
    detail::check_operator(rho, m);
    dense::require_operator_capacity(rho.num_qubits());
    const CMatrix r = rho.to_eigen();
    const CMatrix r2 = r * r;
    const double den = r2.trace().real();
    if (den < 1e-14) {
        throw DegenerateInputError("tr(rho^2) below 1e-14");
    }
    return (dense::to_matrix(m) * r2).trace().real() / den;
}

// First-order truncated virtual distillation
//   Re tr(M_2 D rho(x)rho) / tr(D rho(x)rho),  M_2 = (M(x)I + I(x)M) / 2,
// with D the +-1 diagonal of the truncated swap in `preferred` (sign +1
// for i <= j). Evaluated by summing the doubled-space diagonal pair by pair.
inline double truncated_vd(const DensityMatrix &rho, const PauliSum &m, const Tpb &preferred) {
    detail::check_operator(rho, m);
    detail::require_doubled_capacity(rho.num_qubits(), kMaxDoubledQubits);
    if (preferred.num_qubits() != rho.num_qubits()) {
        throw DimensionError("preferred basis does not match the state");
    }
    const CMatrix u = dense::basis_rotation(preferred.str());
    const CMatrix r = u * rho.to_eigen() * u.adjoint();
    const CMatrix mr = r * (u * dense::to_matrix(m) * u.adjoint());
    const std::size_t dim = rho.dim();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        for (std::size_t j = 0; j < dim; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            const double s = detail::swap_sign(i, j);
            // Diagonal of (rho(x)rho) M_2 at |i, j>.
            const Complex xm = 0.5 * (mr(ii, ii) * r(jj, jj) + r(ii, ii) * mr(jj, jj));
            num += s * xm.real();
            den += s * (r(ii, ii) * r(jj, jj)).real();
        }
    }
    if (std::abs(den) < kZeroDenominator) {
        throw DegenerateInputError("truncated VD denominator vanishes");
    }
    return num / den;
}

// Signed truncation error of one Pauli term,
//   eps = w Re tr(Q'_2 P [D, P^-1] rho'),
// in the frame of the preferred basis (rho' and Q' rotated there), with P
// the rotation from that frame to the term's measurement frame, applied to
// both copies. `measure_basis` fixes the letters on Q's identity qubits
// (default: the preferred basis letters). eps is the difference between the
// squared-probability numerator sum_j lambda_j p_j^2 in the measurement
// basis and the truncated-VD numerator tr(Q_2 D rho(x)rho).
inline double truncation_error(const PauliString &q, double weight, const DensityMatrix &rho, const Tpb &preferred,
                               const std::optional<Tpb> &measure_basis = std::nullopt) {
    const std::size_t n = rho.num_qubits();
    detail::require_doubled_capacity(n, kMaxExplicitDoubledQubits);
    if (q.num_qubits() != n || preferred.num_qubits() != n) {
        throw DimensionError("truncation error operands differ in qubit count");
    }
    std::string fill = measure_basis ? measure_basis->str() : preferred.str();
    if (fill.size() != n) {
        throw DimensionError("measurement basis does not match the state");
    }
    if (measure_basis && !measure_basis->hosts(q)) {
        throw ArgumentError("basis " + measure_basis->str() + " does not host " + q.str());
    }
    const CMatrix u_pref = dense::basis_rotation(preferred.str());
    const CMatrix u_meas = dense::diagonalizing_rotation(q, fill);
    const CMatrix w = dense::kron(u_pref, u_pref);
    const CMatrix p_inv = dense::kron(u_meas, u_meas) * w.adjoint();
    const CMatrix p = p_inv.adjoint();
    const CMatrix r = rho.to_eigen();
    const CMatrix rho_pref = w * dense::kron(r, r) * w.adjoint();
    const CMatrix q_pref = w * detail::symmetrized(dense::pauli_matrix(q.without_phase())) * w.adjoint();
    const Eigen::VectorXd d = detail::swap_sign_diagonal(n);
    const CMatrix commutator = d.asDiagonal() * p_inv - p_inv * d.asDiagonal();
    return weight * (q_pref * p * commutator * rho_pref).trace().real();
}

// |eps| for a unit-weight term.
inline double truncation_epsilon(const PauliString &q, const DensityMatrix &rho, const Tpb &preferred,
                                 const std::optional<Tpb> &measure_basis = std::nullopt) {
    return std::abs(truncation_error(q, 1.0, rho, preferred, measure_basis));
}

// Central finite difference at t = 0 of
//   f(t) = Re tr(M_2 D rho'(t)) / tr(D rho'(t)),
//   rho'(t) = exp(iGt) (rho(x)rho) exp(-iGt),
// for rho an eigenstate of M. G acts on one copy's register (applied to both
// copies as G(x)I + I(x)G) or on the full doubled register.
inline double derivative_check(const DensityMatrix &rho, const PauliSum &m, const PauliSum &g, double delta) {
    const std::size_t n = rho.num_qubits();
    detail::check_operator(rho, m);
    detail::require_doubled_capacity(n, kMaxExplicitDoubledQubits);
    if (!(delta >= 1e-5 && delta <= 1e-2)) {
        throw ArgumentError("finite-difference step must lie in [1e-5, 1e-2]");
    }
    if (g.num_qubits() != n && g.num_qubits() != 2 * n) {
        throw DimensionError("generator must act on " + std::to_string(n) + " or " + std::to_string(2 * n) +
                             " qubits");
    }
    const CMatrix r = rho.to_eigen();
    const CMatrix mm = dense::to_matrix(m);
    const double lambda = (mm * r).trace().real();
    const double residual = (mm * r - lambda * r).norm();
    if (residual >= 1e-8) {
        throw PreconditionError("state is not an eigenstate of the observable (residual " +
                                std::to_string(residual) + ")");
    }
    const CMatrix gen = g.num_qubits() == n ? detail::symmetrized(dense::to_matrix(g)) * 2.0 : dense::to_matrix(g);
    const CMatrix m2 = detail::symmetrized(mm);
    const CMatrix x0 = dense::kron(r, r);
    const Eigen::VectorXd d = detail::swap_sign_diagonal(n);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gen);
    auto f = [&](double t) {
        const CVector phases = (es.eigenvalues().cast<Complex>() * Complex(0, t)).array().exp().matrix();
        const CMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        const CMatrix rot = u * x0 * u.adjoint();
        const CMatrix drot = d.asDiagonal() * rot;
        return (m2 * drot).trace().real() / drot.trace().real();
    };
    return (f(delta) - f(-delta)) / (2 * delta);
}

}  // namespace fcqem
