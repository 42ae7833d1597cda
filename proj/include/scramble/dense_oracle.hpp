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

// Dense-matrix reference implementation used to cross-check stabilizer
// entropies. Exponential in the qubit count; capped at 8 qubits.

#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "scramble/stabilizer_state.hpp"

namespace scramble {

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDenseOracleMaxQubits = 8;

/// Dense matrix of a Pauli string. Qubit j is bit j of the basis index.
inline DenseMatrix dense_pauli_matrix(const PauliString &p) {
    const std::size_t n = p.num_qubits();
    if (n > kDenseOracleMaxQubits) {
        throw std::invalid_argument("dense_pauli_matrix: too many qubits for the dense oracle");
    }
    std::uint64_t x = 0, z = 0;
    for (std::size_t q = 0; q < n; ++q) {
        x |= static_cast<std::uint64_t>(p.xs.get(q)) << q;
        z |= static_cast<std::uint64_t>(p.zs.get(q)) << q;
    }
    const std::size_t dim = std::size_t{1} << n;
    DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    // sigma |b> = i^{|x&z|} (-1)^{z.b} |b xor x>
    static const std::complex<double> i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> base = i_powers[std::popcount(x & z) % 4] * (p.negative ? -1.0 : 1.0);
    for (std::uint64_t b = 0; b < dim; ++b) {
        const double parity = (std::popcount(z & b) & 1) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) = base * parity;
    }
    return m;
}

/// rho = 2^-N sum over the stabilizer group of sign(P) P.
inline DenseMatrix dense_density_matrix(const StabilizerState &state) {
    const std::size_t n = state.num_qubits();
    if (n > kDenseOracleMaxQubits) {
        throw std::invalid_argument("dense_density_matrix: at most 8 qubits are supported");
    }
    const std::size_t dim = std::size_t{1} << n;
    const auto gens = state.generators();
    DenseMatrix rho = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << gens.size()); ++subset) {
        PauliString element(n);
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (subset & (std::uint64_t{1} << g)) {
                element = element * gens[g];
            }
        }
        rho += dense_pauli_matrix(element);
    }
    return rho / static_cast<double>(dim);
}

/// Partial trace keeping the qubits in `keep` (ordered as in the subset).
inline DenseMatrix dense_partial_trace(const DenseMatrix &rho, std::size_t num_qubits, const QubitSubset &keep) {
    keep.check_within(num_qubits);
    const QubitSubset traced = keep.complement(num_qubits);
    const std::size_t kept_dim = std::size_t{1} << keep.size();
    const std::size_t traced_dim = std::size_t{1} << traced.size();
    auto embed = [&](std::uint64_t kept_bits, std::uint64_t traced_bits) {
        std::uint64_t full = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            full |= ((kept_bits >> i) & 1) << keep[i];
        }
        for (std::size_t i = 0; i < traced.size(); ++i) {
            full |= ((traced_bits >> i) & 1) << traced[i];
        }
        return static_cast<Eigen::Index>(full);
    };
    DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(kept_dim), static_cast<Eigen::Index>(kept_dim));
    for (std::uint64_t r = 0; r < kept_dim; ++r) {
        for (std::uint64_t c = 0; c < kept_dim; ++c) {
            std::complex<double> acc = 0;
            for (std::uint64_t t = 0; t < traced_dim; ++t) {
                acc += rho(embed(r, t), embed(c, t));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return out;
}

/// Base-2 von Neumann entropy of a Hermitian density matrix.
inline double dense_von_neumann_entropy(const DenseMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda > 1e-12) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

/// Entropy of `region` computed through the dense density matrix.
inline double dense_subsystem_entropy(const StabilizerState &state, const QubitSubset &region) {
    return dense_von_neumann_entropy(dense_partial_trace(dense_density_matrix(state), state.num_qubits(), region));
}

}  // namespace scramble
