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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scramble/random.hpp"
#include "scramble/stabilizer_state.hpp"
#include "scramble/two_qubit_clifford.hpp"

namespace scramble {

/// Every two-qubit Clifford (signs included), in canonical order: symplectic
/// images of (X_a, Z_a, X_b, Z_b) ascending lexicographically by 4-bit
/// pattern, then the four sign bits as a counter (bit k negates image k).
inline std::vector<TwoQubitClifford> enumerate_two_qubit_cliffords() {
    std::vector<TwoQubitClifford> out;
    out.reserve(TwoQubitClifford::kGroupOrder);
    for (std::uint8_t v0 = 1; v0 < 16; ++v0) {
        for (std::uint8_t v1 = 1; v1 < 16; ++v1) {
            if (!local_symplectic_product(v0, v1)) {
                continue;
            }
            for (std::uint8_t v2 = 1; v2 < 16; ++v2) {
                if (local_symplectic_product(v0, v2) || local_symplectic_product(v1, v2)) {
                    continue;
                }
                for (std::uint8_t v3 = 1; v3 < 16; ++v3) {
                    if (local_symplectic_product(v0, v3) || local_symplectic_product(v1, v3) ||
                        !local_symplectic_product(v2, v3)) {
                        continue;
                    }
                    for (unsigned signs = 0; signs < 16; ++signs) {
                        out.emplace_back(std::array<LocalPauli, 4>{
                            LocalPauli{v0, static_cast<bool>(signs & 1)}, LocalPauli{v1, static_cast<bool>(signs & 2)},
                            LocalPauli{v2, static_cast<bool>(signs & 4)},
                            LocalPauli{v3, static_cast<bool>(signs & 8)}});
                    }
                }
            }
        }
    }
    return out;
}

/// Process-wide enumeration, built on first use and read-only afterwards.
inline const std::vector<TwoQubitClifford> &two_qubit_clifford_table() {
    static const std::vector<TwoQubitClifford> table = enumerate_two_qubit_cliffords();
    return table;
}

/// Position of `gate` in the canonical enumeration.
inline std::size_t two_qubit_clifford_index(const TwoQubitClifford &gate) {
    std::size_t symplectic = 0;
    const auto &table = two_qubit_clifford_table();
    // The sign bits are the low 4 bits of the index; search only sign-free entries.
    for (std::size_t i = 0; i < table.size(); i += 16) {
        const auto &im = table[i].images();
        bool match = true;
        for (int k = 0; k < 4; ++k) {
            match = match && im[k].bits == gate.images()[k].bits;
        }
        if (match) {
            symplectic = i;
            unsigned signs = 0;
            for (int k = 0; k < 4; ++k) {
                signs |= static_cast<unsigned>(gate.images()[k].negative) << k;
            }
            return symplectic + signs;
        }
    }
    throw std::logic_error("two_qubit_clifford_index: gate not in the enumeration");
}

/// Index of a uniformly random two-qubit Clifford.
inline std::size_t sample_two_qubit_clifford_index(RandomStream &rng) {
    return static_cast<std::size_t>(rng.uniform_below(TwoQubitClifford::kGroupOrder));
}

/// Uniformly random two-qubit Clifford (constant-time table lookup).
inline const TwoQubitClifford &sample_two_qubit_clifford(RandomStream &rng) {
    return two_qubit_clifford_table()[sample_two_qubit_clifford_index(rng)];
}

/// An N-qubit Clifford unitary as the images of X_i and Z_i under conjugation.
class GlobalCliffordTableau {
   public:
    GlobalCliffordTableau(std::vector<PauliString> x_images, std::vector<PauliString> z_images)
        : x_images_(std::move(x_images)), z_images_(std::move(z_images)) {
        const std::size_t n = x_images_.size();
        if (n == 0 || z_images_.size() != n) {
            throw std::invalid_argument("GlobalCliffordTableau: need one X and one Z image per qubit");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (x_images_[i].num_qubits() != n || z_images_[i].num_qubits() != n) {
                throw std::invalid_argument("GlobalCliffordTableau: image has the wrong number of qubits");
            }
        }
        if (!is_symplectic()) {
            throw std::invalid_argument("GlobalCliffordTableau: images violate the symplectic condition");
        }
    }

    static GlobalCliffordTableau identity(std::size_t num_qubits) {
        std::vector<PauliString> xs, zs;
        for (std::size_t i = 0; i < num_qubits; ++i) {
            PauliString x(num_qubits), z(num_qubits);
            x.xs.set(i, true);
            z.zs.set(i, true);
            xs.push_back(std::move(x));
            zs.push_back(std::move(z));
        }
        return GlobalCliffordTableau(std::move(xs), std::move(zs));
    }

    /// The two-qubit gate viewed as a 2-qubit tableau (qubit a = 0, b = 1).
    static GlobalCliffordTableau from_two_qubit(const TwoQubitClifford &gate) {
        const auto &im = gate.images();
        return GlobalCliffordTableau({im[0].to_pauli_string(), im[2].to_pauli_string()},
                                     {im[1].to_pauli_string(), im[3].to_pauli_string()});
    }

    std::size_t num_qubits() const { return x_images_.size(); }
    const PauliString &x_image(std::size_t i) const { return x_images_[i]; }
    const PauliString &z_image(std::size_t i) const { return z_images_[i]; }

    /// U P U^dag.
    PauliString conjugate(const PauliString &p) const {
        if (p.num_qubits() != num_qubits()) {
            throw std::invalid_argument("GlobalCliffordTableau::conjugate: qubit count mismatch");
        }
        PauliString acc(num_qubits());
        unsigned exponent = 0;
        for (std::size_t q = 0; q < num_qubits(); ++q) {
            const bool x = p.xs.get(q), z = p.zs.get(q);
            if (x && z) {
                exponent += 1;  // Y = i X Z
            }
            if (x) {
                exponent += multiply_into(acc, x_images_[q]);
            }
            if (z) {
                exponent += multiply_into(acc, z_images_[q]);
            }
        }
        exponent %= 4;
        if (exponent % 2 != 0) {
            throw std::logic_error("GlobalCliffordTableau::conjugate: image is not Hermitian");
        }
        acc.negative ^= p.negative ^ (exponent == 2);
        return acc;
    }

    /// The Clifford next * this (apply this first).
    GlobalCliffordTableau then(const GlobalCliffordTableau &next) const {
        std::vector<PauliString> xs, zs;
        for (std::size_t i = 0; i < num_qubits(); ++i) {
            xs.push_back(next.conjugate(x_images_[i]));
            zs.push_back(next.conjugate(z_images_[i]));
        }
        return GlobalCliffordTableau(std::move(xs), std::move(zs));
    }

    GlobalCliffordTableau inverse() const {
        const std::size_t n = num_qubits();
        auto preimage = [&](const PauliString &target) {
            PauliString q(n);
            for (std::size_t j = 0; j < n; ++j) {
                q.xs.set(j, !target.commutes(z_images_[j]));
                q.zs.set(j, !target.commutes(x_images_[j]));
            }
            q.negative = conjugate(q).negative ^ target.negative;
            return q;
        };
        std::vector<PauliString> xs, zs;
        for (std::size_t i = 0; i < n; ++i) {
            PauliString x(n), z(n);
            x.xs.set(i, true);
            z.zs.set(i, true);
            xs.push_back(preimage(x));
            zs.push_back(preimage(z));
        }
        return GlobalCliffordTableau(std::move(xs), std::move(zs));
    }

    /// Symplectic condition; together with it the 2N images are automatically independent.
    bool is_symplectic() const {
        const std::size_t n = num_qubits();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (x_images_[i].commutes(z_images_[j]) == (i == j)) {
                    return false;
                }
                if (j > i && (!x_images_[i].commutes(x_images_[j]) || !z_images_[i].commutes(z_images_[j]))) {
                    return false;
                }
            }
        }
        return true;
    }

    bool operator==(const GlobalCliffordTableau &) const = default;

   private:
    std::vector<PauliString> x_images_;
    std::vector<PauliString> z_images_;
};

namespace detail {

inline bool symplectic_product(const PauliString &a, const PauliString &b) { return !a.commutes(b); }

/// Uniform element of the span of `spanning` (uniform coefficients over a
/// spanning set give the uniform distribution on the span).
inline PauliString random_span_element(const std::vector<PauliString> &spanning, std::size_t num_qubits,
                                       RandomStream &rng) {
    PauliString v(num_qubits);
    for (const PauliString &s : spanning) {
        if (rng.coin()) {
            v.xs ^= s.xs;
            v.zs ^= s.zs;
        }
    }
    return v;
}

}  // namespace detail

/// Uniformly random N-qubit Clifford. Qubit by qubit, the image of X_i is a
/// uniform nonzero vector of the remaining symplectic space W, the image of
/// Z_i is uniform among vectors of W with unit symplectic product with it, and
/// W shrinks to the symplectic complement of that pair. Signs are uniform.
inline GlobalCliffordTableau sample_global_clifford(std::size_t num_qubits, RandomStream &rng) {
    if (num_qubits == 0) {
        throw std::invalid_argument("sample_global_clifford: need at least one qubit");
    }
    std::vector<PauliString> spanning;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        PauliString x(num_qubits), z(num_qubits);
        x.xs.set(q, true);
        z.zs.set(q, true);
        spanning.push_back(std::move(x));
        spanning.push_back(std::move(z));
    }
    std::vector<PauliString> xs, zs;
    for (std::size_t i = 0; i < num_qubits; ++i) {
        PauliString v(num_qubits);
        do {
            v = detail::random_span_element(spanning, num_qubits, rng);
        } while (v.is_identity());
        PauliString w(num_qubits);
        do {
            w = detail::random_span_element(spanning, num_qubits, rng);
        } while (!detail::symplectic_product(v, w));
        // Project the spanning set onto the symplectic complement of span(v, w).
        std::vector<PauliString> projected;
        for (PauliString u : spanning) {
            const bool uw = detail::symplectic_product(u, w);
            const bool uv = detail::symplectic_product(u, v);
            if (uw) {
                u.xs ^= v.xs;
                u.zs ^= v.zs;
            }
            if (uv) {
                u.xs ^= w.xs;
                u.zs ^= w.zs;
            }
            if (!u.is_identity()) {
                projected.push_back(std::move(u));
            }
        }
        spanning = std::move(projected);
        v.negative = rng.coin();
        w.negative = rng.coin();
        xs.push_back(std::move(v));
        zs.push_back(std::move(w));
    }
    return GlobalCliffordTableau(std::move(xs), std::move(zs));
}

/// Returns `state` with every generator conjugated through `tableau`.
inline StabilizerState apply_global_clifford(const StabilizerState &state, const GlobalCliffordTableau &tableau) {
    if (state.num_qubits() != tableau.num_qubits()) {
        throw std::invalid_argument("apply_global_clifford: dimension mismatch");
    }
    std::vector<PauliString> gens;
    gens.reserve(state.num_generators());
    for (std::size_t g = 0; g < state.num_generators(); ++g) {
        gens.push_back(tableau.conjugate(state.generator(g)));
    }
    return StabilizerState(state.num_qubits(), gens);
}

}  // namespace scramble
