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
#include <stdexcept>
#include <string>
#include <string_view>

#include "scramble/bits.hpp"

namespace scramble {

/// Hermitian Pauli operator on a fixed number of qubits.
///
/// The operator is `(-1)^negative * prod_j sigma(x_j, z_j)` where
/// sigma(0,0)=I, sigma(1,0)=X, sigma(0,1)=Z and sigma(1,1)=Y=iXZ.
struct PauliString {
    BitVector xs;
    BitVector zs;
    bool negative = false;

    PauliString() = default;
    explicit PauliString(std::size_t num_qubits) : xs(num_qubits), zs(num_qubits) {}

    /// Parses strings such as "+XYZ", "-_ZZ" or "XIIZ" ('_' and 'I' are identity).
    static PauliString from_str(std::string_view text) {
        bool negative = false;
        if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
            negative = text.front() == '-';
            text.remove_prefix(1);
        }
        PauliString p(text.size());
        p.negative = negative;
        for (std::size_t q = 0; q < text.size(); ++q) {
            switch (text[q]) {
                case '_':
                case 'I':
                    break;
                case 'X':
                    p.xs.set(q, true);
                    break;
                case 'Y':
                    p.xs.set(q, true);
                    p.zs.set(q, true);
                    break;
                case 'Z':
                    p.zs.set(q, true);
                    break;
                default:
                    throw std::invalid_argument("PauliString::from_str: unexpected character '" +
                                                std::string(1, text[q]) + "'");
            }
        }
        return p;
    }

    std::size_t num_qubits() const { return xs.size(); }

    bool is_identity() const { return !xs.any() && !zs.any(); }

    /// True when the symplectic inner product with `other` vanishes.
    bool commutes(const PauliString &other) const { return !(xs.dot(other.zs) ^ zs.dot(other.xs)); }

    std::string str() const {
        std::string out(1, negative ? '-' : '+');
        for (std::size_t q = 0; q < num_qubits(); ++q) {
            out += "_XZY"[xs.get(q) + 2 * zs.get(q)];
        }
        return out;
    }

    bool operator==(const PauliString &other) const = default;
};

/// Replaces `acc` with the product `acc * rhs` and returns the power of i
/// (mod 4) left over after folding both signs into `acc.negative`.
///
/// The returned exponent is even exactly when the operands commute; even
/// exponents are already folded into the sign and 0 is returned for them.
inline unsigned multiply_into(PauliString &acc, const PauliString &rhs) {
    if (acc.num_qubits() != rhs.num_qubits()) {
        throw std::invalid_argument("multiply_into: qubit count mismatch");
    }
    // Per qubit, sigma(a) sigma(b) = i^g sigma(a xor b) with g = +1 for the
    // cyclic pairs (X,Y), (Y,Z), (Z,X) and g = -1 for the reversed pairs.
    long long exponent = 0;
    auto ax = acc.xs.words();
    auto az = acc.zs.words();
    auto bx = rhs.xs.words();
    auto bz = rhs.zs.words();
    for (std::size_t w = 0; w < ax.size(); ++w) {
        const word_t x1 = ax[w], z1 = az[w], x2 = bx[w], z2 = bz[w];
        const word_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
        const word_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
        const word_t plus = (X1 & Y2) | (Y1 & Z2) | (Z1 & X2);
        const word_t minus = (Y1 & X2) | (Z1 & Y2) | (X1 & Z2);
        exponent += std::popcount(plus) - std::popcount(minus);
        ax[w] = x1 ^ x2;
        az[w] = z1 ^ z2;
    }
    unsigned e = static_cast<unsigned>(((exponent % 4) + 4) % 4);
    acc.negative ^= rhs.negative;
    if (e == 2) {
        acc.negative = !acc.negative;
        e = 0;
    } else if (e == 3) {
        acc.negative = !acc.negative;
        e = 1;
    }
    return e;
}

/// Product of two commuting Pauli strings.
inline PauliString operator*(PauliString a, const PauliString &b) {
    if (multiply_into(a, b) != 0) {
        throw std::invalid_argument("PauliString product of anticommuting operators is not Hermitian");
    }
    return a;
}

}  // namespace scramble
