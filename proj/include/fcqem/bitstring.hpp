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

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcqem/errors.hpp"

namespace fcqem {

// Packed bit vector used for measurement outcomes and Pauli masks.
//
// Qubit k lives in word k / 64 at bit position 63 - k % 64, so comparing the
// word arrays as unsigned integers orders outcomes exactly like their text
// form ("0101..." with qubit 0 leftmost). For n <= 63 the dense index of an
// outcome is therefore the text form read as a binary number.
class Bitstring {
   public:
    Bitstring() = default;
    explicit Bitstring(std::size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    static Bitstring from_str(std::string_view text) {
        Bitstring b(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] == '1') {
                b.set(k, true);
            } else if (text[k] != '0') {
                throw ParseError("invalid bitstring character '" + std::string(1, text[k]) + "' in \"" +
                                 std::string(text) + "\"");
            }
        }
        return b;
    }

    static Bitstring from_index(std::uint64_t index, std::size_t num_bits) {
        if (num_bits > 63) {
            throw CapacityError("dense outcome index supports at most 63 qubits");
        }
        Bitstring b(num_bits);
        if (num_bits > 0) {
            b.words_[0] = index << (64 - num_bits);
        }
        return b;
    }

    std::uint64_t to_index() const {
        if (num_bits_ > 63) {
            throw CapacityError("dense outcome index supports at most 63 qubits");
        }
        return num_bits_ == 0 ? 0 : words_[0] >> (64 - num_bits_);
    }

    std::size_t size() const noexcept {
        return num_bits_;
    }
    std::span<const std::uint64_t> words() const noexcept {
        return words_;
    }
    std::span<std::uint64_t> words() noexcept {
        return words_;
    }

    bool get(std::size_t k) const noexcept {
        return (words_[k >> 6] >> (63 - (k & 63))) & 1;
    }
    void set(std::size_t k, bool v) noexcept {
        std::uint64_t m = std::uint64_t{1} << (63 - (k & 63));
        if (v) {
            words_[k >> 6] |= m;
        } else {
            words_[k >> 6] &= ~m;
        }
    }
    void flip(std::size_t k) noexcept {
        words_[k >> 6] ^= std::uint64_t{1} << (63 - (k & 63));
    }

    std::size_t popcount() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) {
            c += std::popcount(w);
        }
        return c;
    }

    // Parity of the bits selected by `mask` (same layout, same length).
    bool masked_parity(std::span<const std::uint64_t> mask) const noexcept {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            acc ^= words_[i] & mask[i];
        }
        return std::popcount(acc) & 1;
    }

    Bitstring &operator^=(const Bitstring &other) {
        if (other.num_bits_ != num_bits_) {
            throw DimensionError("bitstring length mismatch");
        }
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] ^= other.words_[i];
        }
        return *this;
    }

    std::string str() const {
        std::string s(num_bits_, '0');
        for (std::size_t k = 0; k < num_bits_; ++k) {
            if (get(k)) {
                s[k] = '1';
            }
        }
        return s;
    }

    friend bool operator==(const Bitstring &, const Bitstring &) = default;
    friend std::strong_ordering operator<=>(const Bitstring &a, const Bitstring &b) {
        if (auto c = a.num_bits_ <=> b.num_bits_; c != 0) {
            return c;
        }
        return a.words_ <=> b.words_;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ num_bits_;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

   private:
    std::size_t num_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace fcqem

template <>
struct std::hash<fcqem::Bitstring> {
    std::size_t operator()(const fcqem::Bitstring &b) const noexcept {
        return b.hash();
    }
};
