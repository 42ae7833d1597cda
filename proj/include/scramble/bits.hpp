// Copyright 2026 The scramblelab Authors
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
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scramble {

using word_t = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t num_bits) {
    return (num_bits + kWordBits - 1) / kWordBits;
}

/// Fixed-length vector over GF(2), packed 64 bits per word. Bits past size()
/// in the last word are kept at zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t num_bits) : num_bits_(num_bits), words_(words_for_bits(num_bits), 0) {}

    /// Parses a string of '0'/'1' characters; character i is bit i.
    static BitVector from_string(std::string_view bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                v.set(i, true);
            } else if (bits[i] != '0') {
                throw std::invalid_argument("BitVector::from_string: expected '0' or '1'");
            }
        }
        return v;
    }

    std::size_t size() const { return num_bits_; }
    std::size_t num_words() const { return words_.size(); }
    std::span<word_t> words() { return words_; }
    std::span<const word_t> words() const { return words_; }

    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value) {
        word_t mask = word_t{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i / kWordBits] ^= word_t{1} << (i % kWordBits); }

    BitVector &operator^=(const BitVector &other) {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    BitVector &operator&=(const BitVector &other) {
        check_same_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector &b) { return a &= b; }

    bool any() const {
        for (word_t w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    std::size_t popcount() const {
        std::size_t total = 0;
        for (word_t w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }
    /// Parity of the bitwise AND with `other` (dot product over GF(2)).
    bool dot(const BitVector &other) const {
        check_same_size(other);
        word_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            acc ^= words_[w] & other.words_[w];
        }
        return std::popcount(acc) & 1;
    }

    std::string str() const {
        std::string out(num_bits_, '0');
        for (std::size_t i = 0; i < num_bits_; ++i) {
            if (get(i)) {
                out[i] = '1';
            }
        }
        return out;
    }

    bool operator==(const BitVector &other) const = default;
    auto operator<=>(const BitVector &other) const = default;

   private:
    void check_same_size(const BitVector &other) const {
        if (other.num_bits_ != num_bits_) {
            throw std::invalid_argument("BitVector: length mismatch");
        }
    }

    std::size_t num_bits_ = 0;
    std::vector<word_t> words_;
};

/// Rank over GF(2) of vectors of at most 64 bits. Destroys `vectors`.
inline std::size_t gf2_rank_single_word(std::span<word_t> vectors) {
    word_t basis[kWordBits] = {};
    std::size_t rank = 0;
    for (word_t v : vectors) {
        while (v) {
            int top = std::bit_width(v) - 1;
            if (!basis[top]) {
                basis[top] = v;
                ++rank;
                break;
            }
            v ^= basis[top];
        }
    }
    return rank;
}

/// Rank over GF(2) of `num_rows` rows stored contiguously, `row_words` words
/// each. The buffer is used as elimination scratch space.
inline std::size_t gf2_rank_in_place(std::span<word_t> rows, std::size_t num_rows, std::size_t row_words) {
    if (row_words == 1) {
        return gf2_rank_single_word(rows.first(num_rows));
    }
    std::size_t rank = 0;
    const std::size_t num_bits = row_words * kWordBits;
    for (std::size_t col = 0; col < num_bits && rank < num_rows; ++col) {
        const std::size_t w = col / kWordBits;
        const word_t bit = word_t{1} << (col % kWordBits);
        std::size_t pivot = rank;
        while (pivot < num_rows && !(rows[pivot * row_words + w] & bit)) {
            ++pivot;
        }
        if (pivot == num_rows) {
            continue;
        }
        if (pivot != rank) {
            for (std::size_t k = 0; k < row_words; ++k) {
                std::swap(rows[pivot * row_words + k], rows[rank * row_words + k]);
            }
        }
        for (std::size_t r = rank + 1; r < num_rows; ++r) {
            if (rows[r * row_words + w] & bit) {
                // Words before `w` are already zero in both rows below the pivot.
                for (std::size_t k = w; k < row_words; ++k) {
                    rows[r * row_words + k] ^= rows[rank * row_words + k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

/// Rank over GF(2). Rows must share a common length; the input is not modified.
inline std::size_t gf2_rank(std::span<const BitVector> rows) {
    if (rows.empty()) {
        return 0;
    }
    const std::size_t row_words = rows.front().num_words();
    std::vector<word_t> scratch;
    scratch.reserve(rows.size() * row_words);
    for (const BitVector &row : rows) {
        if (row.size() != rows.front().size()) {
            throw std::invalid_argument("gf2_rank: rows must have equal length");
        }
        scratch.insert(scratch.end(), row.words().begin(), row.words().end());
    }
    if (row_words == 0) {
        return 0;
    }
    return gf2_rank_in_place(scratch, rows.size(), row_words);
}

}  // namespace scramble
