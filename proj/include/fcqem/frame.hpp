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
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "fcqem/bitstring.hpp"
#include "fcqem/circuit.hpp"
#include "fcqem/distribution.hpp"
#include "fcqem/errors.hpp"
#include "fcqem/rng.hpp"

namespace fcqem {

inline constexpr std::size_t kMaxFrameQubits = 4096;

// A circuit restricted to H, S, X, Y, Z, CNOT and CZ.
class CliffordCircuit {
   public:
    explicit CliffordCircuit(Circuit c) : circuit_(std::move(c)) {
        if (circuit_.num_qubits() == 0 || circuit_.num_qubits() > kMaxFrameQubits) {
            throw CapacityError("frame simulation supports 1.." + std::to_string(kMaxFrameQubits) + " qubits, got " +
                                std::to_string(circuit_.num_qubits()));
        }
        for (const auto &g : circuit_.gates()) {
            switch (g.kind) {
                case GateKind::H:
                case GateKind::S:
                case GateKind::X:
                case GateKind::Y:
                case GateKind::Z:
                case GateKind::CNOT:
                case GateKind::CZ:
                    break;
                default:
                    throw ArgumentError("gate " + std::string(gate_name(g.kind)) +
                                        " is not supported by the frame simulator");
            }
        }
    }

    const Circuit &circuit() const noexcept {
        return circuit_;
    }
    std::size_t num_qubits() const noexcept {
        return circuit_.num_qubits();
    }

   private:
    Circuit circuit_;
};

// A Pauli applied to every shot just before measurement.
struct InjectedError {
    std::size_t qubit = 0;
    char pauli = 'X';
};

enum class NoisePlacement {
    // After every gate layer on the qubits it touched, then on every qubit
    // before measurement.
    EveryLayer,
    // Only the final layer on every qubit before measurement.
    BeforeMeasurement,
};

// Single-qubit Pauli channel plus optional deterministic errors.
struct PauliNoiseSpec {
    double p_x = 0, p_y = 0, p_z = 0;
    NoisePlacement placement = NoisePlacement::EveryLayer;
    std::vector<InjectedError> injected;

    // Total rate `rate` split so that p_z = bias * p_x = bias * p_y.
    static PauliNoiseSpec biased(double rate, double bias = 10.0) {
        if (!(bias >= 0)) {
            throw ArgumentError("dephasing bias must be non-negative");
        }
        const double unit = rate / (2.0 + bias);
        PauliNoiseSpec s;
        s.p_x = unit;
        s.p_y = unit;
        s.p_z = bias * unit;
        s.validate(1);
        return s;
    }

    double total() const noexcept {
        return p_x + p_y + p_z;
    }

    void validate(std::size_t num_qubits) const {
        for (double p : {p_x, p_y, p_z}) {
            if (!(p >= 0 && p <= 1)) {
                throw ArgumentError("Pauli noise probabilities must lie in [0, 1]");
            }
        }
        if (total() > 1.0 + 1e-15) {
            throw ArgumentError("Pauli noise probabilities sum above 1");
        }
        for (const auto &e : injected) {
            if (e.qubit >= num_qubits) {
                throw DimensionError("injected error on qubit " + std::to_string(e.qubit) + " of a " +
                                     std::to_string(num_qubits) + "-qubit circuit");
            }
            if (e.pauli != 'X' && e.pauli != 'Y' && e.pauli != 'Z') {
                throw ArgumentError("injected error must be X, Y or Z");
            }
        }
    }
};

namespace detail {

// Aaronson-Gottesman stabilizer tableau, used once per circuit to draw a
// reference outcome. Rows 0..n-1 are destabilizers, n..2n-1 stabilizers,
// row 2n is scratch.
class Tableau {
   public:
    explicit Tableau(std::size_t n)
        : n_(n), words_((n + 63) / 64), x_((2 * n + 1) * words_, 0), z_((2 * n + 1) * words_, 0), r_(2 * n + 1, 0) {
        for (std::size_t i = 0; i < n; ++i) {
            set(x_, i, i, true);
            set(z_, n + i, i, true);
        }
    }

    void apply(const Gate &g) {
        const std::size_t a = g.qubits[0], b = g.qubits[1];
        switch (g.kind) {
            case GateKind::H:
                for (std::size_t i = 0; i < 2 * n_; ++i) {
                    bool xa = get(x_, i, a), za = get(z_, i, a);
                    r_[i] ^= xa & za;
                    set(x_, i, a, za);
                    set(z_, i, a, xa);
                }
                break;
            case GateKind::S:
                for (std::size_t i = 0; i < 2 * n_; ++i) {
                    bool xa = get(x_, i, a), za = get(z_, i, a);
                    r_[i] ^= xa & za;
                    set(z_, i, a, za ^ xa);
                }
                break;
            case GateKind::X:
                for (std::size_t i = 0; i < 2 * n_; ++i) {
                    r_[i] ^= get(z_, i, a);
                }
                break;
            case GateKind::Z:
                for (std::size_t i = 0; i < 2 * n_; ++i) {
                    r_[i] ^= get(x_, i, a);
                }
                break;
            case GateKind::Y:
                for (std::size_t i = 0; i < 2 * n_; ++i) {
                    r_[i] ^= get(x_, i, a) ^ get(z_, i, a);
                }
                break;
            case GateKind::CNOT:
                cnot(a, b);
                break;
            case GateKind::CZ:
                apply({GateKind::H, {b, 0}, 0});
                cnot(a, b);
                apply({GateKind::H, {b, 0}, 0});
                break;
            default:
                throw ArgumentError("non-Clifford gate in tableau");
        }
    }

    // Z measurement of qubit a; random outcomes resolve to 0.
    bool measure(std::size_t a) {
        std::size_t p = 2 * n_;
        for (std::size_t i = n_; i < 2 * n_; ++i) {
            if (get(x_, i, a)) {
                p = i;
                break;
            }
        }
        if (p < 2 * n_) {
            for (std::size_t i = 0; i < 2 * n_; ++i) {
                if (i != p && get(x_, i, a)) {
                    rowsum(i, p);
                }
            }
            copy_row(p - n_, p);
            clear_row(p);
            set(z_, p, a, true);
            r_[p] = 0;
            return false;
        }
        const std::size_t s = 2 * n_;
        clear_row(s);
        for (std::size_t i = 0; i < n_; ++i) {
            if (get(x_, i, a)) {
                rowsum(s, i + n_);
            }
        }
        return r_[s];
    }

   private:
    bool get(const std::vector<std::uint64_t> &m, std::size_t row, std::size_t q) const {
        return (m[row * words_ + (q >> 6)] >> (q & 63)) & 1;
    }
    void set(std::vector<std::uint64_t> &m, std::size_t row, std::size_t q, bool v) {
        const std::uint64_t bit = std::uint64_t{1} << (q & 63);
        auto &w = m[row * words_ + (q >> 6)];
        w = v ? (w | bit) : (w & ~bit);
    }

    void cnot(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < 2 * n_; ++i) {
            bool xa = get(x_, i, a), za = get(z_, i, a);
            bool xb = get(x_, i, b), zb = get(z_, i, b);
            r_[i] ^= xa & zb & (xb ^ za ^ true);
            set(x_, i, b, xb ^ xa);
            set(z_, i, a, za ^ zb);
        }
    }

    // Row h <- row i * row h, tracking the sign.
    void rowsum(std::size_t h, std::size_t i) {
        int plus = 0, minus = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            const std::uint64_t x1 = x_[i * words_ + w], z1 = z_[i * words_ + w];
            const std::uint64_t x2 = x_[h * words_ + w], z2 = z_[h * words_ + w];
            const std::uint64_t y1 = x1 & z1, xo = x1 & ~z1, zo = z1 & ~x1;
            plus += std::popcount((y1 & z2 & ~x2) | (xo & z2 & x2) | (zo & x2 & ~z2));
            minus += std::popcount((y1 & x2 & ~z2) | (xo & z2 & ~x2) | (zo & x2 & z2));
            x_[h * words_ + w] = x1 ^ x2;
            z_[h * words_ + w] = z1 ^ z2;
        }
        const int phase = ((2 * r_[h] + 2 * r_[i] + plus - minus) % 4 + 4) % 4;
        r_[h] = phase == 2;
    }

    void copy_row(std::size_t dst, std::size_t src) {
        std::copy_n(x_.begin() + static_cast<std::ptrdiff_t>(src * words_), words_,
                    x_.begin() + static_cast<std::ptrdiff_t>(dst * words_));
        std::copy_n(z_.begin() + static_cast<std::ptrdiff_t>(src * words_), words_,
                    z_.begin() + static_cast<std::ptrdiff_t>(dst * words_));
        r_[dst] = r_[src];
    }
    void clear_row(std::size_t row) {
        std::fill_n(x_.begin() + static_cast<std::ptrdiff_t>(row * words_), words_, 0);
        std::fill_n(z_.begin() + static_cast<std::ptrdiff_t>(row * words_), words_, 0);
        r_[row] = 0;
    }

    std::size_t n_, words_;
    std::vector<std::uint64_t> x_, z_;
    std::vector<std::uint8_t> r_;
};

// One valid Z-basis outcome of the noiseless circuit.
inline Bitstring reference_outcome(const CliffordCircuit &c) {
    Tableau t(c.num_qubits());
    for (const auto &g : c.circuit().gates()) {
        t.apply(g);
    }
    Bitstring ref(c.num_qubits());
    for (std::size_t q = 0; q < c.num_qubits(); ++q) {
        ref.set(q, t.measure(q));
    }
    return ref;
}

inline constexpr std::size_t kFrameWords = 16;
inline constexpr std::size_t kFrameBatch = 64 * kFrameWords;

// Pauli frames of one batch of shots: bit s of x[q] / z[q] is shot s.
struct FrameBatch {
    std::vector<std::array<std::uint64_t, kFrameWords>> x, z;

    explicit FrameBatch(std::size_t n) : x(n), z(n) {
        for (auto &w : x) {
            w.fill(0);
        }
        for (auto &w : z) {
            w.fill(0);
        }
    }

    void apply(const Gate &g) {
        const std::size_t a = g.qubits[0], b = g.qubits[1];
        switch (g.kind) {
            case GateKind::H:
                std::swap(x[a], z[a]);
                break;
            case GateKind::S:
                for (std::size_t w = 0; w < kFrameWords; ++w) {
                    z[a][w] ^= x[a][w];
                }
                break;
            case GateKind::CNOT:
                for (std::size_t w = 0; w < kFrameWords; ++w) {
                    x[b][w] ^= x[a][w];
                    z[a][w] ^= z[b][w];
                }
                break;
            case GateKind::CZ:
                for (std::size_t w = 0; w < kFrameWords; ++w) {
                    z[a][w] ^= x[b][w];
                    z[b][w] ^= x[a][w];
                }
                break;
            default:  // Paulis only change signs, which frames do not track
                break;
        }
    }

    // Independent Pauli errors on qubit q across all shots of the batch.
    void noise(std::size_t q, const PauliNoiseSpec &spec, Rng &rng) {
        const double p = spec.total();
        if (p <= 0) {
            return;
        }
        std::uint64_t s = geometric_skip(rng, p);
        while (s < kFrameBatch) {
            const std::uint64_t bit = std::uint64_t{1} << (s & 63);
            const double u = uniform01(rng) * p;
            if (u < spec.p_x) {
                x[q][s >> 6] ^= bit;
            } else if (u < spec.p_x + spec.p_y) {
                x[q][s >> 6] ^= bit;
                z[q][s >> 6] ^= bit;
            } else {
                z[q][s >> 6] ^= bit;
            }
            const std::uint64_t skip = geometric_skip(rng, p);
            if (skip >= kFrameBatch) {
                break;
            }
            s += skip + 1;
        }
    }
};

}  // namespace detail

// Z-basis outcome counts of `shots` runs of a Clifford circuit under Pauli
// noise. A noiseless reference outcome is drawn once from a stabilizer
// tableau; each shot then XORs the X part of its propagated Pauli frame onto
// it. Frames start with a random Z on every qubit, which makes the frame
// reproduce the circuit's intrinsic measurement randomness.
//
// Shots run in batches of 1024 with independent random streams derived from
// (seed, batch index), so results depend only on the arguments.
inline ProbDist frame_sample(const CliffordCircuit &c, const PauliNoiseSpec &noise, std::uint64_t shots,
                             std::uint64_t seed) {
    if (shots == 0) {
        throw ArgumentError("frame_sample needs at least one shot");
    }
    const std::size_t n = c.num_qubits();
    noise.validate(n);
    const Bitstring ref = detail::reference_outcome(c);
    const auto layers = c.circuit().layers();

    std::vector<Bitstring> outcomes;
    outcomes.reserve(shots);
    const std::uint64_t batches = (shots + detail::kFrameBatch - 1) / detail::kFrameBatch;
    for (std::uint64_t b = 0; b < batches; ++b) {
        Rng rng = make_rng(seed, "frame", b);
        detail::FrameBatch f(n);
        for (std::size_t q = 0; q < n; ++q) {
            for (auto &w : f.z[q]) {
                w = rng();
            }
        }
        for (const auto &layer : layers) {
            for (const auto &g : layer) {
                f.apply(g);
            }
            if (noise.placement != NoisePlacement::EveryLayer) {
                continue;
            }
            for (const auto &g : layer) {
                for (std::size_t i = 0; i < g.arity(); ++i) {
                    f.noise(g.qubits[i], noise, rng);
                }
            }
        }
        for (std::size_t q = 0; q < n; ++q) {
            f.noise(q, noise, rng);
        }
        for (const auto &e : noise.injected) {
            if (e.pauli != 'Z') {
                for (auto &w : f.x[e.qubit]) {
                    w = ~w;
                }
            }
        }
        const std::uint64_t in_batch = std::min<std::uint64_t>(detail::kFrameBatch, shots - b * detail::kFrameBatch);
        for (std::uint64_t s = 0; s < in_batch; ++s) {
            Bitstring o = ref;
            for (std::size_t q = 0; q < n; ++q) {
                if ((f.x[q][s >> 6] >> (s & 63)) & 1) {
                    o.flip(q);
                }
            }
            outcomes.push_back(std::move(o));
        }
    }
    std::sort(outcomes.begin(), outcomes.end());
    std::vector<std::pair<Bitstring, std::uint64_t>> counts;
    for (auto &o : outcomes) {
        if (!counts.empty() && counts.back().first == o) {
            ++counts.back().second;
        } else {
            counts.emplace_back(std::move(o), 1);
        }
    }
    return ProbDist::from_counts(Tpb::all_z(n), std::move(counts));
}

// <Z...Z> = sum_o (-1)^parity(o) p_o over a Z-basis distribution.
inline double spin_correlation(const ProbDist &dist) {
    if (dist.basis() != Tpb::all_z(dist.num_qubits())) {
        throw ArgumentError("spin correlation needs a Z-basis distribution, got " + dist.basis().str());
    }
    double s = 0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        s += (dist.outcomes()[k].popcount() & 1) ? -dist.probs()[k] : dist.probs()[k];
    }
    return s;
}

}  // namespace fcqem
