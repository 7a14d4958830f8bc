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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

namespace fcqem {
namespace {

Circuit random_clifford(std::size_t n, std::size_t gates, std::mt19937_64 &rng) {
    static constexpr GateKind kinds[] = {GateKind::H, GateKind::S, GateKind::X, GateKind::Y,
                                         GateKind::Z, GateKind::CNOT, GateKind::CZ};
    Circuit c(n);
    for (std::size_t k = 0; k < gates; ++k) {
        GateKind kind = kinds[rng() % 7];
        if (is_two_qubit(kind) && n < 2) {
            kind = GateKind::H;
        }
        Gate g{kind, {rng() % n, 0}, 0};
        if (is_two_qubit(kind)) {
            g.qubits[1] = (g.qubits[0] + 1 + rng() % (n - 1)) % n;
        }
        c.add(g);
    }
    return c;
}

// Every outcome of `emp` lies within 5 binomial sigma of `exact` (plus a
// small floor so that zero-probability outcomes must have zero counts).
void expect_consistent(const ProbDist &emp, const ProbDist &exact) {
    const double shots = static_cast<double>(*emp.shots());
    const auto a = emp.to_dense(), b = exact.to_dense();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double sigma = std::sqrt(b[i] * (1 - b[i]) / shots);
        EXPECT_LE(std::abs(a[i] - b[i]), 5 * sigma + 1e-12) << "outcome " << i;
    }
}

TEST(Frame, NoiselessNeel) {
    auto d = frame_sample(CliffordCircuit(neel_circuit(4)), {}, 10000, 3);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.outcomes()[0].str(), "0101");
    EXPECT_EQ(d.outcomes()[1].str(), "1010");
    EXPECT_NEAR(d.probs()[0], 0.5, 5 * std::sqrt(0.25 / 10000));
    EXPECT_EQ(d.counts()[0] + d.counts()[1], 10000u);
}

TEST(Frame, DephasingBeforeZMeasurementIsInvisible) {
    auto c = CliffordCircuit(neel_circuit(6));
    PauliNoiseSpec z;
    z.p_z = 0.3;
    z.placement = NoisePlacement::BeforeMeasurement;
    EXPECT_TRUE(frame_sample(c, z, 5000, 11) == frame_sample(c, {}, 5000, 11));
    // Mid-circuit dephasing ahead of the Hadamard does reach the outcomes.
    z.placement = NoisePlacement::EveryLayer;
    EXPECT_FALSE(frame_sample(c, z, 5000, 11) == frame_sample(c, {}, 5000, 11));
}

TEST(Frame, InjectedXFlipsBitZero) {
    auto c = CliffordCircuit(neel_circuit(4));
    PauliNoiseSpec inj;
    inj.injected.push_back({0, 'X'});
    auto clean = frame_sample(c, {}, 3000, 5);
    auto flipped = frame_sample(c, inj, 3000, 5);
    ASSERT_EQ(clean.size(), flipped.size());
    for (std::size_t k = 0; k < clean.size(); ++k) {
        Bitstring o = clean.outcomes()[k];
        o.flip(0);
        EXPECT_NEAR(flipped.probability(o), clean.probs()[k], 0.0);
    }
}

TEST(Frame, SpinCorrelation) {
    auto z4 = Tpb::all_z(4);
    EXPECT_EQ(spin_correlation(ProbDist::exact_sparse(z4, {{Bitstring::from_str("0101"), 1.0}})), 1.0);
    EXPECT_EQ(spin_correlation(ProbDist::exact_sparse(z4, {{Bitstring::from_str("0001"), 1.0}})), -1.0);
    EXPECT_EQ(spin_correlation(frame_sample(CliffordCircuit(neel_circuit(10)), {}, 2000, 1)), -1.0);
    EXPECT_THROW(spin_correlation(ProbDist::exact_dense(Tpb("X"), {1, 0})), ArgumentError);
}

TEST(Frame, NoiselessMatchesDenseSimulator) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 1 + t % 6;
        auto c = random_clifford(n, 25, rng);
        auto emp = frame_sample(CliffordCircuit(c), {}, 20000, static_cast<std::uint64_t>(t));
        expect_consistent(emp, measure_probs(run_circuit(c), Tpb::all_z(n)));
    }
    auto neel = neel_circuit(10);
    expect_consistent(frame_sample(CliffordCircuit(neel), {}, 20000, 99),
                      measure_probs(run_circuit(neel), Tpb::all_z(10)));
}

TEST(Frame, NoisyMatchesDensePauliChannel) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 12; ++t) {
        const std::size_t n = 2 + t % 4;
        auto c = random_clifford(n, 12, rng);
        auto spec = PauliNoiseSpec::biased(testing::uniform(rng, 0.01, 0.3));
        NoiseModel nm;
        nm.pauli_x = spec.p_x;
        nm.pauli_y = spec.p_y;
        nm.pauli_z = spec.p_z;
        auto emp = frame_sample(CliffordCircuit(c), spec, 40000, 1000 + static_cast<std::uint64_t>(t));
        expect_consistent(emp, measure_probs(run_noisy(c, nm), Tpb::all_z(n)));
    }
}

TEST(Frame, BiasedSplit) {
    auto s = PauliNoiseSpec::biased(0.012);
    EXPECT_NEAR(s.p_x, 0.001, 1e-15);
    EXPECT_NEAR(s.p_y, 0.001, 1e-15);
    EXPECT_NEAR(s.p_z, 0.010, 1e-15);
    EXPECT_NEAR(s.total(), 0.012, 1e-15);
    EXPECT_THROW(PauliNoiseSpec::biased(1.5), ArgumentError);
}

TEST(Frame, DeterministicAndValidated) {
    auto c = CliffordCircuit(neel_circuit(8));
    auto spec = PauliNoiseSpec::biased(0.05);
    EXPECT_TRUE(frame_sample(c, spec, 5000, 1) == frame_sample(c, spec, 5000, 1));
    EXPECT_FALSE(frame_sample(c, spec, 5000, 1) == frame_sample(c, spec, 5000, 2));
    EXPECT_THROW(frame_sample(c, spec, 0, 1), ArgumentError);
    Circuit rot(1);
    rot.rotate(GateKind::RY, 0, 0.3);
    EXPECT_THROW(CliffordCircuit{rot}, ArgumentError);
    Circuit isw(2);
    isw.add(GateKind::ISWAP, 0, 1);
    EXPECT_THROW(CliffordCircuit{isw}, ArgumentError);
    EXPECT_THROW(CliffordCircuit(Circuit(4097)), CapacityError);
    PauliNoiseSpec bad;
    bad.injected.push_back({9, 'X'});
    EXPECT_THROW(frame_sample(c, bad, 10, 1), DimensionError);
}

TEST(Frame, LargeRegisterRuns) {
    auto c = CliffordCircuit(neel_circuit(512));
    auto d = frame_sample(c, PauliNoiseSpec::biased(1e-3), 4096, 17);
    EXPECT_EQ(d.num_qubits(), 512u);
    EXPECT_EQ(*d.shots(), 4096u);
    EXPECT_LT(std::abs(spin_correlation(d) - 1.0), 2.0);
}

}  // namespace
}  // namespace fcqem
