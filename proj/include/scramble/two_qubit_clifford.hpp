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

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "scramble/pauli.hpp"

namespace scramble {

/// Pauli operator on a qubit pair (a, b), packed as a 4-bit pattern:
/// bit 0 = x_a, bit 1 = z_a, bit 2 = x_b, bit 3 = z_b.
struct LocalPauli {
    std::uint8_t bits = 0;
    bool negative = false;

    bool x_a() const { return bits & 1; }
    bool z_a() const { return bits & 2; }
    bool x_b() const { return bits & 4; }
    bool z_b() const { return bits & 8; }

    PauliString to_pauli_string() const {
        PauliString p(2);
        p.xs.set(0, x_a());
        p.zs.set(0, z_a());
        p.xs.set(1, x_b());
        p.zs.set(1, z_b());
        p.negative = negative;
        return p;
    }
    static LocalPauli from_pauli_string(const PauliString &p) {
        if (p.num_qubits() != 2) {
            throw std::invalid_argument("LocalPauli: expected a two-qubit Pauli string");
        }
        LocalPauli out;
        out.bits = static_cast<std::uint8_t>(p.xs.get(0) | (p.zs.get(0) << 1) | (p.xs.get(1) << 2) |
                                             (p.zs.get(1) << 3));
        out.negative = p.negative;
        return out;
    }

    bool operator==(const LocalPauli &) const = default;
};

/// Symplectic inner product of two 4-bit patterns.
constexpr bool local_symplectic_product(std::uint8_t p, std::uint8_t q) {
    // Swapping the x and z bit of each qubit turns the symplectic form into a dot product.
    const std::uint8_t q_swapped = static_cast<std::uint8_t>(((q & 0b0101) << 1) | ((q & 0b1010) >> 1));
    return std::popcount(static_cast<unsigned>(p & q_swapped)) & 1;
}

namespace detail {

/// Multiplies local Paulis `acc * rhs`; returns the leftover power of i as in multiply_into.
inline unsigned local_multiply_into(LocalPauli &acc, const LocalPauli &rhs) {
    auto xs = [](std::uint8_t b) { return static_cast<unsigned>((b & 1) | ((b >> 1) & 2)); };
    auto zs = [](std::uint8_t b) { return static_cast<unsigned>(((b >> 1) & 1) | ((b >> 2) & 2)); };
    const unsigned x1 = xs(acc.bits), z1 = zs(acc.bits), x2 = xs(rhs.bits), z2 = zs(rhs.bits);
    const unsigned X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1 & 3;
    const unsigned X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2 & 3;
    const int plus = std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
    const int minus = std::popcount((Y1 & X2) | (Z1 & Y2) | (X1 & Z2));
    unsigned e = static_cast<unsigned>(((plus - minus) % 4 + 4) % 4);
    acc.bits ^= rhs.bits;
    acc.negative ^= rhs.negative;
    if (e >= 2) {
        acc.negative = !acc.negative;
        e -= 2;
    }
    return e;
}

}  // namespace detail

/// A two-qubit Clifford unitary U, stored as the conjugation images
/// U P U^dag of the generators X_a, Z_a, X_b, Z_b (in that order).
class TwoQubitClifford {
   public:
    static constexpr std::size_t kGroupOrder = 11520;

    TwoQubitClifford() : TwoQubitClifford(identity_images()) {}

    /// Validates the symplectic condition: images of X_a/Z_a and X_b/Z_b
    /// anticommute pairwise and every other pair commutes.
    explicit TwoQubitClifford(const std::array<LocalPauli, 4> &images) : images_(images) {
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const bool expected = (i == 0 && j == 1) || (i == 2 && j == 3);
                if (local_symplectic_product(images_[i].bits, images_[j].bits) != expected) {
                    throw std::invalid_argument("TwoQubitClifford: images violate the symplectic condition");
                }
            }
        }
        build_kernel();
    }

    static TwoQubitClifford identity() { return TwoQubitClifford(); }

    const std::array<LocalPauli, 4> &images() const { return images_; }

    /// U P U^dag for an arbitrary two-qubit Pauli P.
    LocalPauli conjugate(const LocalPauli &p) const {
        LocalPauli out{conjugated_bits_[p.bits], p.negative != static_cast<bool>((sign_flips_ >> p.bits) & 1)};
        return out;
    }

    /// Output column c (pattern bit c) is the XOR of the input columns in this mask.
    std::uint8_t column_sources(int c) const { return column_sources_[c]; }

    /// Algebraic normal form of the sign flip as a function of the 4 input
    /// pattern bits: flip = XOR over listed monomials of AND of their bits.
    std::span<const std::uint8_t> sign_monomials() const {
        return std::span<const std::uint8_t>(sign_monomials_.data(), num_sign_monomials_);
    }

    /// The Clifford V = next * this (apply this first).
    TwoQubitClifford then(const TwoQubitClifford &next) const {
        std::array<LocalPauli, 4> composed;
        for (int k = 0; k < 4; ++k) {
            composed[k] = next.conjugate(images_[k]);
        }
        return TwoQubitClifford(composed);
    }

    TwoQubitClifford inverse() const {
        std::array<LocalPauli, 4> inv;
        for (int k = 0; k < 4; ++k) {
            const std::uint8_t target = static_cast<std::uint8_t>(1U << k);
            // Preimage coordinates from invariance of the symplectic form:
            // coefficient of X_j is <P, U Z_j U^dag>, of Z_j is <P, U X_j U^dag>.
            std::uint8_t bits = 0;
            for (int j = 0; j < 2; ++j) {
                if (local_symplectic_product(target, images_[2 * j + 1].bits)) {
                    bits |= static_cast<std::uint8_t>(1U << (2 * j));
                }
                if (local_symplectic_product(target, images_[2 * j].bits)) {
                    bits |= static_cast<std::uint8_t>(1U << (2 * j + 1));
                }
            }
            LocalPauli candidate{bits, false};
            candidate.negative = conjugate(candidate).negative;
            inv[k] = candidate;
        }
        return TwoQubitClifford(inv);
    }

    bool operator==(const TwoQubitClifford &other) const { return images_ == other.images_; }

    std::string str() const {
        static const char *names[4] = {"X_a", "Z_a", "X_b", "Z_b"};
        std::string out;
        for (int k = 0; k < 4; ++k) {
            out += names[k];
            out += " -> ";
            out += images_[k].to_pauli_string().str();
            out += k < 3 ? ", " : "";
        }
        return out;
    }

   private:
    static std::array<LocalPauli, 4> identity_images() {
        return {LocalPauli{1, false}, LocalPauli{2, false}, LocalPauli{4, false}, LocalPauli{8, false}};
    }

    void build_kernel() {
        for (int c = 0; c < 4; ++c) {
            std::uint8_t mask = 0;
            for (int k = 0; k < 4; ++k) {
                if (images_[k].bits & (1U << c)) {
                    mask |= static_cast<std::uint8_t>(1U << k);
                }
            }
            column_sources_[c] = mask;
        }
        // sigma(p) = i^{#Y} prod_k G_k^{p_k} with the generators taken in the order X_a Z_a X_b Z_b.
        std::array<std::uint8_t, 16> flip{};
        sign_flips_ = 0;
        for (unsigned p = 0; p < 16; ++p) {
            LocalPauli acc{0, false};
            unsigned exponent = static_cast<unsigned>(((p & 1) && (p & 2)) + ((p & 4) && (p & 8)));
            for (int k = 0; k < 4; ++k) {
                if (p & (1U << k)) {
                    exponent += detail::local_multiply_into(acc, images_[k]);
                }
            }
            exponent %= 4;
            if (exponent % 2 != 0) {
                throw std::logic_error("TwoQubitClifford: conjugated Pauli is not Hermitian");
            }
            conjugated_bits_[p] = acc.bits;
            flip[p] = static_cast<std::uint8_t>(acc.negative ^ (exponent == 2));
            sign_flips_ |= static_cast<std::uint16_t>(flip[p] << p);
        }
        // Moebius transform: ANF coefficient of monomial m is XOR of f over subsets of m.
        std::array<std::uint8_t, 16> anf = flip;
        for (int bit = 0; bit < 4; ++bit) {
            for (unsigned m = 0; m < 16; ++m) {
                if (m & (1U << bit)) {
                    anf[m] ^= anf[m ^ (1U << bit)];
                }
            }
        }
        num_sign_monomials_ = 0;
        for (unsigned m = 1; m < 16; ++m) {
            if (anf[m]) {
                sign_monomials_[num_sign_monomials_++] = static_cast<std::uint8_t>(m);
            }
        }
    }

    std::array<LocalPauli, 4> images_;
    std::array<std::uint8_t, 4> column_sources_{};
    std::array<std::uint8_t, 16> conjugated_bits_{};
    std::uint16_t sign_flips_ = 0;
    std::array<std::uint8_t, 15> sign_monomials_{};
    std::size_t num_sign_monomials_ = 0;
};

}  // namespace scramble
