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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcqem/bitstring.hpp"
#include "fcqem/errors.hpp"
#include "fcqem/pauli.hpp"

namespace fcqem {

// Outcome distribution of one tensor-product-basis measurement.
//
// Entries are kept sorted by outcome (qubit 0 most significant). Exact
// distributions carry probabilities only; empirical ones also carry the
// integer counts they were built from, and `shots` is their sum.
class ProbDist {
   public:
    ProbDist() = default;

    // All 2^n probabilities, indexed with qubit 0 as the most significant bit.
    static ProbDist exact_dense(Tpb basis, const std::vector<double> &probs) {
        const std::size_t n = basis.num_qubits();
        if (n > 63 || probs.size() != (std::uint64_t{1} << n)) {
            throw DimensionError("dense distribution for " + std::to_string(n) + " qubits needs 2^n entries, got " +
                                 std::to_string(probs.size()));
        }
        ProbDist d;
        d.basis_ = std::move(basis);
        d.outcomes_.reserve(probs.size());
        d.probs_.reserve(probs.size());
        for (std::uint64_t i = 0; i < probs.size(); ++i) {
            d.outcomes_.push_back(Bitstring::from_index(i, n));
            d.probs_.push_back(checked_prob(probs[i]));
        }
        return d;
    }

    static ProbDist exact_sparse(Tpb basis, std::vector<std::pair<Bitstring, double>> entries) {
        ProbDist d;
        d.basis_ = std::move(basis);
        std::sort(entries.begin(), entries.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        for (auto &[o, p] : entries) {
            d.check_outcome(o);
            double v = checked_prob(p);
            if (!d.outcomes_.empty() && d.outcomes_.back() == o) {
                d.probs_.back() += v;
            } else {
                d.outcomes_.push_back(std::move(o));
                d.probs_.push_back(v);
            }
        }
        return d;
    }

    static ProbDist from_counts(Tpb basis, std::vector<std::pair<Bitstring, std::uint64_t>> entries) {
        ProbDist d;
        d.basis_ = std::move(basis);
        std::sort(entries.begin(), entries.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        std::uint64_t shots = 0;
        for (auto &[o, c] : entries) {
            d.check_outcome(o);
            shots += c;
            if (c == 0) {
                continue;
            }
            if (!d.outcomes_.empty() && d.outcomes_.back() == o) {
                d.counts_.back() += c;
            } else {
                d.outcomes_.push_back(std::move(o));
                d.counts_.push_back(c);
            }
        }
        if (shots == 0) {
            throw ArgumentError("empirical distribution for basis " + d.basis_.str() + " has zero shots");
        }
        d.shots_ = shots;
        d.probs_.reserve(d.counts_.size());
        for (auto c : d.counts_) {
            d.probs_.push_back(static_cast<double>(c) / static_cast<double>(shots));
        }
        return d;
    }

    const Tpb &basis() const noexcept {
        return basis_;
    }
    std::size_t num_qubits() const noexcept {
        return basis_.num_qubits();
    }
    std::size_t size() const noexcept {
        return outcomes_.size();
    }
    const std::vector<Bitstring> &outcomes() const noexcept {
        return outcomes_;
    }
    const std::vector<double> &probs() const noexcept {
        return probs_;
    }
    bool is_exact() const noexcept {
        return !shots_.has_value();
    }
    std::optional<std::uint64_t> shots() const noexcept {
        return shots_;
    }
    const std::vector<std::uint64_t> &counts() const noexcept {
        return counts_;
    }

    double total() const {
        double s = 0;
        for (double p : probs_) {
            s += p;
        }
        return s;
    }

    bool is_normalized(double tol = 1e-9) const {
        return std::abs(total() - 1.0) <= tol;
    }

    double probability(const Bitstring &o) const {
        auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), o);
        if (it == outcomes_.end() || *it != o) {
            return 0.0;
        }
        return probs_[static_cast<std::size_t>(it - outcomes_.begin())];
    }

    std::vector<double> to_dense() const {
        const std::size_t n = num_qubits();
        if (n > 20) {
            throw CapacityError("dense view of a " + std::to_string(n) + "-qubit distribution");
        }
        std::vector<double> out(std::size_t{1} << n, 0.0);
        for (std::size_t i = 0; i < outcomes_.size(); ++i) {
            out[outcomes_[i].to_index()] = probs_[i];
        }
        return out;
    }

    // Same support, new exact probabilities.
    ProbDist with_probs(std::vector<double> probs) const {
        if (probs.size() != probs_.size()) {
            throw DimensionError("probability vector size mismatch");
        }
        ProbDist d;
        d.basis_ = basis_;
        d.outcomes_ = outcomes_;
        d.probs_ = std::move(probs);
        return d;
    }

    friend bool operator==(const ProbDist &, const ProbDist &) = default;

   private:
    static double checked_prob(double p) {
        if (!std::isfinite(p) || p < -1e-12) {
            throw ArgumentError("invalid probability " + std::to_string(p));
        }
        return p < 0 ? 0.0 : p;
    }
    void check_outcome(const Bitstring &o) const {
        if (o.size() != basis_.num_qubits()) {
            throw DimensionError("outcome \"" + o.str() + "\" does not match basis " + basis_.str());
        }
    }

    Tpb basis_;
    std::vector<Bitstring> outcomes_;
    std::vector<double> probs_;
    std::vector<std::uint64_t> counts_;
    std::optional<std::uint64_t> shots_;
};

// Distributions for a family of measurement bases on one register.
class MeasurementSet {
   public:
    MeasurementSet() = default;
    explicit MeasurementSet(std::size_t num_qubits) : num_qubits_(num_qubits) {
    }

    std::size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    const std::map<Tpb, ProbDist> &dists() const noexcept {
        return dists_;
    }
    std::map<std::string, std::string> &metadata() noexcept {
        return metadata_;
    }
    const std::map<std::string, std::string> &metadata() const noexcept {
        return metadata_;
    }

    void add(ProbDist d) {
        if (d.num_qubits() != num_qubits_) {
            throw DimensionError("distribution over " + std::to_string(d.num_qubits()) +
                                 " qubits added to a set over " + std::to_string(num_qubits_));
        }
        if (dists_.count(d.basis())) {
            throw ArgumentError("duplicate measurement basis " + d.basis().str());
        }
        Tpb key = d.basis();
        dists_.emplace(std::move(key), std::move(d));
    }

    const ProbDist *find(const Tpb &b) const {
        auto it = dists_.find(b);
        return it == dists_.end() ? nullptr : &it->second;
    }
    bool contains(const Tpb &b) const {
        return dists_.count(b) > 0;
    }
    std::size_t size() const noexcept {
        return dists_.size();
    }

    friend bool operator==(const MeasurementSet &, const MeasurementSet &) = default;

   private:
    std::size_t num_qubits_ = 0;
    std::map<Tpb, ProbDist> dists_;
    std::map<std::string, std::string> metadata_;
};

}  // namespace fcqem
