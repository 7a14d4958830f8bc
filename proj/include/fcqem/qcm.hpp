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

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "fcqem/distribution.hpp"
#include "fcqem/mitigation.hpp"
#include "fcqem/pauli.hpp"

namespace fcqem {

// <H>, <H^2>, <H^3>, <H^4>.
struct Moments {
    std::array<double, 4> m{};

    double operator[](std::size_t k) const {
        return m[k];
    }
    // m2 - m1^2; negative values flag inconsistent (noisy) data.
    double variance() const {
        return m[1] - m[0] * m[0];
    }
};

struct Cumulants {
    std::array<double, 4> c{};

    double operator[](std::size_t k) const {
        return c[k];
    }
};

enum class QcmStatus { Ok, DegenerateFallback, NegativeRadicand };

inline std::string to_string(QcmStatus s) {
    switch (s) {
        case QcmStatus::Ok:
            return "ok";
        case QcmStatus::DegenerateFallback:
            return "degenerate-fallback";
        case QcmStatus::NegativeRadicand:
            return "negative-radicand";
    }
    return "?";
}

struct QcmEstimate {
    double energy = 0;
    QcmStatus status = QcmStatus::Ok;
    double radicand = 0;     // 3 c3^2 - 2 c2 c4
    double denominator = 0;  // c3^2 - c2 c4
};

// Moments of `h` evaluated from measured distributions, every string of
// H..H^4 taken from its host basis (optionally FCQEM-corrected).
inline Moments moments_from_measurements(const MeasurementSet &ms, const PauliSum &h,
                                         const std::optional<FcqemConfig> &corrector = std::nullopt,
                                         const MeasurementSet *second = nullptr) {
    const HamiltonianPowers powers = hamiltonian_powers(h, 4);
    const auto ev = pauli_expectations(ms, powers.union_weights(), corrector, second);
    Moments out;
    for (std::size_t k = 0; k < 4; ++k) {
        double s = 0;
        for (const auto &[p, w] : powers.powers[k].terms()) {
            s += w * ev.at(p);
        }
        out.m[k] = s;
    }
    return out;
}

// c_n = m_n - sum_{p=0}^{n-2} C(n-1, p) c_{p+1} m_{n-1-p}.
inline Cumulants cumulants(const Moments &mo) {
    auto m = [&](std::size_t k) { return mo.m[k - 1]; };
    static constexpr double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    Cumulants out;
    for (std::size_t n = 1; n <= 4; ++n) {
        double c = m(n);
        for (std::size_t p = 0; p + 2 <= n; ++p) {
            c -= binom[n - 1][p] * out.c[p] * m(n - 1 - p);
        }
        out.c[n - 1] = c;
    }
    return out;
}

// Fourth-order Lanczos-cumulant ground-state estimate
//   E = c1 - c2^2 / (c3^2 - c2 c4) * (sqrt(3 c3^2 - 2 c2 c4) - c3).
// Degenerate or unphysical inputs return c1 with a non-ok status.
inline QcmEstimate qcm_energy(const Cumulants &cu) {
    const double c1 = cu.c[0], c2 = cu.c[1], c3 = cu.c[2], c4 = cu.c[3];
    QcmEstimate e;
    e.radicand = 3 * c3 * c3 - 2 * c2 * c4;
    e.denominator = c3 * c3 - c2 * c4;
    e.energy = c1;
    if (c2 <= 1e-9 * std::max(1.0, c1 * c1)) {
        e.status = QcmStatus::DegenerateFallback;
    } else if (e.radicand < 0) {
        e.status = QcmStatus::NegativeRadicand;
    } else if (std::abs(e.denominator) <= 1e-12 * std::max(1.0, c2 * c2)) {
        e.status = QcmStatus::DegenerateFallback;
    } else {
        e.energy = c1 - c2 * c2 / e.denominator * (std::sqrt(e.radicand) - c3);
    }
    return e;
}

inline QcmEstimate qcm_from_measurements(const MeasurementSet &ms, const PauliSum &h) {
    return qcm_energy(cumulants(moments_from_measurements(ms, h)));
}

// QCM on FCQEM-corrected moments; the configuration is used as given.
inline QcmEstimate qcm_with_fcqem(const MeasurementSet &ms, const PauliSum &h, const FcqemConfig &cfg,
                                  const MeasurementSet *second = nullptr) {
    return qcm_energy(cumulants(moments_from_measurements(ms, h, cfg, second)));
}

}  // namespace fcqem
