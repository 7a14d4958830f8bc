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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcqem {

// Operand sizes disagree (qubit counts, basis lengths, distribution sizes).
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// An argument is outside its documented domain.
class ArgumentError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// Problem size exceeds a dense-simulation threshold.
class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

// Input data is numerically degenerate (zero norm, zero denominator).
class DegenerateInputError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

// A documented precondition on the input state does not hold.
class PreconditionError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

// An internal invariant was violated (e.g. non-negligible imaginary weight
// left after multiplying Hermitian sums).
class ConsistencyError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

// Malformed text or JSON input. `line` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {
    }
    std::size_t line() const noexcept {
        return line_;
    }

   private:
    std::size_t line_;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Measurement data lacks bases required to evaluate an observable.
class MissingMeasurementError : public std::runtime_error {
   public:
    explicit MissingMeasurementError(std::vector<std::string> missing)
        : std::runtime_error(describe(missing)), missing_(std::move(missing)) {
    }
    const std::vector<std::string> &missing_bases() const noexcept {
        return missing_;
    }

   private:
    static std::string describe(const std::vector<std::string> &missing) {
        std::string s = "missing measurement bases:";
        for (const auto &b : missing) {
            s += ' ';
            s += b;
        }
        return s;
    }
    std::vector<std::string> missing_;
};

}  // namespace fcqem
