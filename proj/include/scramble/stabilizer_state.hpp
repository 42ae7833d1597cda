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

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scramble/bits.hpp"
#include "scramble/pauli.hpp"
#include "scramble/two_qubit_clifford.hpp"

namespace scramble {

/// Sorted set of distinct qubit indices.
class QubitSubset {
   public:
    QubitSubset() = default;
    QubitSubset(std::initializer_list<std::size_t> members) : QubitSubset(std::vector<std::size_t>(members)) {}
    explicit QubitSubset(std::vector<std::size_t> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
            throw std::invalid_argument("QubitSubset: duplicate qubit index");
        }
    }

    /// {begin, begin+1, ..., end-1}.
    static QubitSubset range(std::size_t begin, std::size_t end) {
        std::vector<std::size_t> m;
        for (std::size_t q = begin; q < end; ++q) {
            m.push_back(q);
        }
        return QubitSubset(std::move(m));
    }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::span<const std::size_t> members() const { return members_; }
    std::size_t operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool contains(std::size_t q) const { return std::binary_search(members_.begin(), members_.end(), q); }

    /// Throws std::out_of_range unless every member is below `num_qubits`.
    void check_within(std::size_t num_qubits) const {
        if (!members_.empty() && members_.back() >= num_qubits) {
            throw std::out_of_range("QubitSubset: qubit " + std::to_string(members_.back()) +
                                    " out of range for " + std::to_string(num_qubits) + " qubits");
        }
    }

    QubitSubset complement(std::size_t num_qubits) const {
        check_within(num_qubits);
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < num_qubits; ++q) {
            if (!contains(q)) {
                out.push_back(q);
            }
        }
        return QubitSubset(std::move(out));
    }

    QubitSubset united_with(const QubitSubset &other) const {
        std::vector<std::size_t> out;
        std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                       std::back_inserter(out));
        return QubitSubset(std::move(out));
    }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            out += (i ? "," : "") + std::to_string(members_[i]);
        }
        return out + "}";
    }

    bool operator==(const QubitSubset &) const = default;

   private:
    std::vector<std::size_t> members_;
};

/// A stabilizer state on N qubits given by g independent, mutually commuting
/// Pauli generators. g = N is a pure state; g < N is the uniform mixture over
/// the joint +1 eigenspace, with entropy N - g.
///
/// Storage is column-major: for each qubit, the X and Z bits of all
/// generators are packed into words, so a gate on a qubit pair touches four
/// short columns.
class StabilizerState {
   public:
    StabilizerState(std::size_t num_qubits, std::span<const PauliString> generators)
        : num_qubits_(num_qubits), num_generators_(generators.size()), words_(words_for_bits(generators.size())) {
        if (num_qubits == 0) {
            throw std::invalid_argument("StabilizerState: need at least one qubit");
        }
        if (generators.size() > num_qubits) {
            throw std::invalid_argument("StabilizerState: more generators than qubits");
        }
        xs_.assign(num_qubits_ * words_, 0);
        zs_.assign(num_qubits_ * words_, 0);
        signs_.assign(words_, 0);
        for (std::size_t g = 0; g < generators.size(); ++g) {
            const PauliString &p = generators[g];
            if (p.num_qubits() != num_qubits) {
                throw std::invalid_argument("StabilizerState: generator has the wrong number of qubits");
            }
            const word_t bit = word_t{1} << (g % kWordBits);
            const std::size_t w = g / kWordBits;
            for (std::size_t q = 0; q < num_qubits; ++q) {
                if (p.xs.get(q)) {
                    xs_[q * words_ + w] |= bit;
                }
                if (p.zs.get(q)) {
                    zs_[q * words_ + w] |= bit;
                }
            }
            if (p.negative) {
                signs_[w] |= bit;
            }
        }
        if (!generators_commute()) {
            throw std::invalid_argument("StabilizerState: generators do not commute");
        }
        if (!generators_independent()) {
            throw std::invalid_argument("StabilizerState: generators are not independent");
        }
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_generators() const { return num_generators_; }
    /// Von Neumann entropy (bits) of the whole state.
    std::size_t entropy() const { return num_qubits_ - num_generators_; }

    PauliString generator(std::size_t g) const {
        if (g >= num_generators_) {
            throw std::out_of_range("StabilizerState::generator: index out of range");
        }
        PauliString p(num_qubits_);
        const word_t bit = word_t{1} << (g % kWordBits);
        const std::size_t w = g / kWordBits;
        for (std::size_t q = 0; q < num_qubits_; ++q) {
            p.xs.set(q, xs_[q * words_ + w] & bit);
            p.zs.set(q, zs_[q * words_ + w] & bit);
        }
        p.negative = signs_[w] & bit;
        return p;
    }

    std::vector<PauliString> generators() const {
        std::vector<PauliString> out;
        out.reserve(num_generators_);
        for (std::size_t g = 0; g < num_generators_; ++g) {
            out.push_back(generator(g));
        }
        return out;
    }

    /// X (or Z) bits of qubit `q` across all generators, `words_per_column()` words.
    std::span<const word_t> x_column(std::size_t q) const { return {xs_.data() + q * words_, words_}; }
    std::span<const word_t> z_column(std::size_t q) const { return {zs_.data() + q * words_, words_}; }
    std::span<const word_t> sign_bits() const { return signs_; }
    std::size_t words_per_column() const { return words_; }

    /// Conjugates every generator by `gate` acting on qubits (a, b).
    void apply_gate(const TwoQubitClifford &gate, std::size_t a, std::size_t b) {
        if (a == b) {
            throw std::invalid_argument("apply_gate: qubit indices must differ");
        }
        if (a >= num_qubits_ || b >= num_qubits_) {
            throw std::out_of_range("apply_gate: qubit index out of range");
        }
        word_t *cols[4] = {xs_.data() + a * words_, zs_.data() + a * words_, xs_.data() + b * words_,
                           zs_.data() + b * words_};
        std::uint8_t sources[4];
        for (int c = 0; c < 4; ++c) {
            sources[c] = gate.column_sources(c);
        }
        const auto monomials = gate.sign_monomials();
        for (std::size_t w = 0; w < words_; ++w) {
            const word_t in[4] = {cols[0][w], cols[1][w], cols[2][w], cols[3][w]};
            word_t flip = 0;
            for (std::uint8_t m : monomials) {
                word_t term = ~word_t{0};
                for (int k = 0; k < 4; ++k) {
                    if (m & (1U << k)) {
                        term &= in[k];
                    }
                }
                flip ^= term;
            }
            signs_[w] ^= flip;
            for (int c = 0; c < 4; ++c) {
                word_t out = 0;
                for (int k = 0; k < 4; ++k) {
                    if (sources[c] & (1U << k)) {
                        out ^= in[k];
                    }
                }
                cols[c][w] = out;
            }
        }
#ifndef NDEBUG
        if (!generators_commute() || !generators_independent()) {
            throw std::logic_error("apply_gate: stabilizer invariants broken");
        }
#endif
    }

    bool generators_commute() const {
        // Symplectic Gram matrix: row g is the XOR over qubits of x_q[g] z_q + z_q[g] x_q.
        for (std::size_t g = 0; g < num_generators_; ++g) {
            const word_t bit = word_t{1} << (g % kWordBits);
            const std::size_t gw = g / kWordBits;
            for (std::size_t w = 0; w < words_; ++w) {
                word_t acc = 0;
                for (std::size_t q = 0; q < num_qubits_; ++q) {
                    if (xs_[q * words_ + gw] & bit) {
                        acc ^= zs_[q * words_ + w];
                    }
                    if (zs_[q * words_ + gw] & bit) {
                        acc ^= xs_[q * words_ + w];
                    }
                }
                if (acc) {
                    return false;
                }
            }
        }
        return true;
    }

    bool generators_independent() const {
        std::vector<BitVector> rows;
        rows.reserve(num_generators_);
        for (std::size_t g = 0; g < num_generators_; ++g) {
            const PauliString p = generator(g);
            BitVector row(2 * num_qubits_);
            for (std::size_t q = 0; q < num_qubits_; ++q) {
                row.set(2 * q, p.xs.get(q));
                row.set(2 * q + 1, p.zs.get(q));
            }
            rows.push_back(std::move(row));
        }
        return gf2_rank(rows) == num_generators_;
    }

    bool operator==(const StabilizerState &) const = default;

   private:
    std::size_t num_qubits_;
    std::size_t num_generators_;
    std::size_t words_;
    std::vector<word_t> xs_;
    std::vector<word_t> zs_;
    std::vector<word_t> signs_;
};

/// |0...0> on N qubits: generator i is +Z_i.
inline StabilizerState new_basis_state(std::size_t num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("new_basis_state: need at least one qubit");
    }
    std::vector<PauliString> gens;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        PauliString p(num_qubits);
        p.zs.set(q, true);
        gens.push_back(std::move(p));
    }
    return StabilizerState(num_qubits, gens);
}

/// Equal mixture of all computational-basis inputs on `encoded`, |0> elsewhere:
/// generators +Z_j for every j outside `encoded`.
inline StabilizerState new_mixed_encoding_state(std::size_t num_qubits, const QubitSubset &encoded) {
    if (num_qubits == 0) {
        throw std::invalid_argument("new_mixed_encoding_state: need at least one qubit");
    }
    encoded.check_within(num_qubits);
    std::vector<PauliString> gens;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (!encoded.contains(q)) {
            PauliString p(num_qubits);
            p.zs.set(q, true);
            gens.push_back(std::move(p));
        }
    }
    return StabilizerState(num_qubits, gens);
}

/// Purification of new_mixed_encoding_state on N + C qubits: encoded[i] forms a
/// Bell pair with reference qubit N + i, all other system qubits are |0>.
inline StabilizerState new_purified_state(std::size_t num_qubits, std::size_t num_logical, const QubitSubset &encoded) {
    if (num_qubits == 0) {
        throw std::invalid_argument("new_purified_state: need at least one system qubit");
    }
    if (encoded.size() != num_logical) {
        throw std::invalid_argument("new_purified_state: |encoded| must equal the number of logical qubits");
    }
    encoded.check_within(num_qubits);
    const std::size_t total = num_qubits + num_logical;
    std::vector<PauliString> gens;
    for (std::size_t i = 0; i < num_logical; ++i) {
        PauliString xx(total);
        xx.xs.set(encoded[i], true);
        xx.xs.set(num_qubits + i, true);
        PauliString zz(total);
        zz.zs.set(encoded[i], true);
        zz.zs.set(num_qubits + i, true);
        gens.push_back(std::move(xx));
        gens.push_back(std::move(zz));
    }
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (!encoded.contains(q)) {
            PauliString p(total);
            p.zs.set(q, true);
            gens.push_back(std::move(p));
        }
    }
    return StabilizerState(total, gens);
}

/// Returns `state` with `gate` applied on `pair`.
inline StabilizerState apply_two_qubit_gate(StabilizerState state, const TwoQubitClifford &gate,
                                            std::pair<std::size_t, std::size_t> pair) {
    state.apply_gate(gate, pair.first, pair.second);
    return state;
}

namespace detail {

inline std::size_t entropy_from_columns(const StabilizerState &state, const QubitSubset &region,
                                        const word_t *selection, std::size_t selected_generators) {
    if (region.size() > state.num_qubits()) {
        throw std::out_of_range("subsystem_entropy: region larger than the system");
    }
    region.check_within(state.num_qubits());
    const std::size_t words = state.words_per_column();
    const std::size_t outside = state.num_qubits() - region.size();
    thread_local std::vector<word_t> scratch;
    scratch.resize(2 * outside * words);
    std::size_t row = 0;
    for (std::size_t q = 0, next = 0; q < state.num_qubits(); ++q) {
        if (next < region.size() && region[next] == q) {
            ++next;
            continue;
        }
        const auto xc = state.x_column(q);
        const auto zc = state.z_column(q);
        for (std::size_t w = 0; w < words; ++w) {
            const word_t mask = selection ? selection[w] : ~word_t{0};
            scratch[row * words + w] = xc[w] & mask;
            scratch[(row + 1) * words + w] = zc[w] & mask;
        }
        row += 2;
    }
    const std::size_t rank = words == 0 ? 0 : gf2_rank_in_place(scratch, row, words);
    // Generators supported inside the region span a space of dimension g - rank.
    return region.size() - (selected_generators - rank);
}

}  // namespace detail

/// Von Neumann entropy in bits of the reduced state on `region`:
/// |region| - (g - rank of the generators restricted to the complement).
inline std::size_t subsystem_entropy(const StabilizerState &state, const QubitSubset &region) {
    return detail::entropy_from_columns(state, region, nullptr, state.num_generators());
}

/// Entropy of `region` for the mixed stabilizer state generated by the subset
/// of `state`'s generators flagged in `selection` (one bit per generator).
inline std::size_t subsystem_entropy(const StabilizerState &state, const QubitSubset &region,
                                     const BitVector &selection) {
    if (selection.size() != state.num_generators()) {
        throw std::invalid_argument("subsystem_entropy: selection must have one bit per generator");
    }
    return detail::entropy_from_columns(state, region, selection.words().data(), selection.popcount());
}

}  // namespace scramble
