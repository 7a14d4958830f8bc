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

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace fcqem {

// All sampling uses std::mt19937_64, whose output sequence is fixed by the
// C++ standard, and converts draws to doubles by hand so results do not
// depend on a particular standard library's distribution implementations.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

// Seed for an independent stream identified by (seed, label, index).
inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view label, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(fnv1a(label) + 0x632be59bd9b4e019ULL * (index + 1)));
}

inline Rng make_rng(std::uint64_t seed, std::string_view label, std::uint64_t index) {
    return Rng(derive_stream(seed, label, index));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Number of failures before the next success of a Bernoulli(p) process.
// Returns a huge value when p == 0.
inline std::uint64_t geometric_skip(Rng &rng, double p) {
    if (p <= 0) {
        return UINT64_MAX;
    }
    if (p >= 1) {
        return 0;
    }
    double u = 1.0 - uniform01(rng);  // (0, 1]
    double k = std::floor(std::log(u) / std::log1p(-p));
    return k >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(k);
}

}  // namespace fcqem
