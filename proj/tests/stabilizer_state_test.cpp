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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "scramble/bits.hpp"
#include "scramble/dense_oracle.hpp"
#include "scramble/stabilizer_state.hpp"
#include "test_support.hpp"

namespace scramble {
namespace {

StabilizerState state_of(std::size_t n, std::initializer_list<const char *> gens) {
    std::vector<PauliString> ps;
    for (const char *g : gens) {
        ps.push_back(PauliString::from_str(g));
    }
    return StabilizerState(n, ps);
}

QubitSubset random_region(std::size_t n, RandomStream &rng) {
    std::vector<std::size_t> members;
    for (std::size_t q = 0; q < n; ++q) {
        if (rng.coin()) {
            members.push_back(q);
        }
    }
    return QubitSubset(members);
}

TEST(QubitSubset, SortsAndValidates) {
    const QubitSubset s{3, 0, 2};
    EXPECT_EQ(s.str(), "{0,2,3}");
    EXPECT_TRUE(s.contains(2));
    EXPECT_FALSE(s.contains(1));
    EXPECT_EQ(s.complement(5), (QubitSubset{1, 4}));
    EXPECT_THROW((QubitSubset{1, 1}), std::invalid_argument);
    EXPECT_THROW(s.check_within(3), std::out_of_range);
}

TEST(StabilizerState, BasisStateHasUnitZGenerators) {
    const StabilizerState s = new_basis_state(3);
    ASSERT_EQ(s.num_generators(), 3u);
    EXPECT_EQ(s.generator(0), PauliString::from_str("Z__"));
    EXPECT_EQ(s.generator(2), PauliString::from_str("__Z"));
    EXPECT_EQ(subsystem_entropy(new_basis_state(2), QubitSubset{0}), 0u);
    EXPECT_EQ(new_basis_state(1).generator(0), PauliString::from_str("Z"));
    EXPECT_THROW(new_basis_state(0), std::invalid_argument);
}

TEST(StabilizerState, MixedEncodingState) {
    const StabilizerState s = new_mixed_encoding_state(2, QubitSubset{0});
    ASSERT_EQ(s.num_generators(), 1u);
    EXPECT_EQ(s.generator(0), PauliString::from_str("_Z"));
    EXPECT_EQ(s.entropy(), 1u);
    EXPECT_EQ(subsystem_entropy(s, QubitSubset{0}), 1u);
    EXPECT_EQ(new_mixed_encoding_state(3, QubitSubset{}), new_basis_state(3));
    EXPECT_THROW(new_mixed_encoding_state(2, QubitSubset{2}), std::out_of_range);
}

TEST(StabilizerState, PurifiedState) {
    const StabilizerState bell = new_purified_state(1, 1, QubitSubset{0});
    EXPECT_EQ(bell.generator(0), PauliString::from_str("XX"));
    EXPECT_EQ(bell.generator(1), PauliString::from_str("ZZ"));
    EXPECT_EQ(subsystem_entropy(bell, QubitSubset{0}), 1u);

    const StabilizerState s = new_purified_state(2, 1, QubitSubset{0});
    ASSERT_EQ(s.num_generators(), 3u);
    EXPECT_EQ(s.generator(0), PauliString::from_str("X_X"));
    EXPECT_EQ(s.generator(1), PauliString::from_str("Z_Z"));
    EXPECT_EQ(s.generator(2), PauliString::from_str("_Z_"));
    EXPECT_THROW(new_purified_state(2, 2, QubitSubset{0}), std::invalid_argument);
}

TEST(StabilizerState, TracingTheReferenceGivesTheMixedEncoding) {
    const StabilizerState purified = new_purified_state(2, 1, QubitSubset{0});
    const StabilizerState mixed = new_mixed_encoding_state(2, QubitSubset{0});
    for (const QubitSubset &region : {QubitSubset{0}, QubitSubset{1}, QubitSubset{0, 1}}) {
        EXPECT_EQ(subsystem_entropy(purified, region), subsystem_entropy(mixed, region));
        const double dense = dense_subsystem_entropy(purified, region);
        EXPECT_NEAR(dense, static_cast<double>(subsystem_entropy(mixed, region)), 1e-9);
    }
}

TEST(StabilizerState, RejectsInvalidGenerators) {
    EXPECT_THROW(state_of(1, {"X", "Z"}), std::invalid_argument);
    EXPECT_THROW(state_of(2, {"XX", "XX"}), std::invalid_argument);
    EXPECT_THROW(state_of(2, {"X_", "_Z", "ZZ"}), std::invalid_argument);
    EXPECT_THROW(state_of(2, {"XXX"}), std::invalid_argument);
}

TEST(SubsystemEntropy, SmallExamples) {
    EXPECT_EQ(subsystem_entropy(state_of(2, {"XX", "ZZ"}), QubitSubset{0}), 1u);
    const StabilizerState ghz = state_of(3, {"XXX", "ZZ_", "_ZZ"});
    EXPECT_EQ(subsystem_entropy(ghz, QubitSubset{0, 1}), 1u);
    EXPECT_NEAR(dense_subsystem_entropy(ghz, QubitSubset{0, 1}), 1.0, 1e-9);
    EXPECT_EQ(subsystem_entropy(ghz, QubitSubset{}), 0u);
    EXPECT_THROW(subsystem_entropy(ghz, QubitSubset{3}), std::out_of_range);
}

TEST(SubsystemEntropy, GateExamples) {
    // CNOT(0 -> 1): X_a -> X_a X_b, Z_a -> Z_a, X_b -> X_b, Z_b -> Z_a Z_b.
    const TwoQubitClifford cnot({LocalPauli{0b0101, false}, LocalPauli{0b0010, false}, LocalPauli{0b0100, false},
                                 LocalPauli{0b1010, false}});
    const StabilizerState s = apply_two_qubit_gate(new_basis_state(2), cnot, {0, 1});
    EXPECT_EQ(s.generator(0), PauliString::from_str("Z_"));
    EXPECT_EQ(s.generator(1), PauliString::from_str("ZZ"));

    StabilizerState t = new_basis_state(3);
    t.apply_gate(TwoQubitClifford::identity(), 0, 2);
    EXPECT_EQ(t, new_basis_state(3));
    EXPECT_THROW(t.apply_gate(cnot, 1, 1), std::invalid_argument);
    EXPECT_THROW(t.apply_gate(cnot, 0, 3), std::out_of_range);
}

TEST(SubsystemEntropy, GateThenInverseRestoresTheState) {
    RandomStream rng(8);
    const auto &table = two_qubit_clifford_table();
    for (int i = 0; i < 200; ++i) {
        const StabilizerState start = testing::random_stabilizer_state(4, 1 + rng.uniform_below(4), rng);
        const auto &g = table[rng.uniform_below(table.size())];
        StabilizerState s = start;
        s.apply_gate(g, 3, 1);
        s.apply_gate(g.inverse(), 3, 1);
        EXPECT_EQ(s, start);
    }
}

// Stabilizer entropies against the dense density-matrix oracle: random states
// on at most 5 qubits, pure and mixed, built by random gate sequences.
TEST(SubsystemEntropy, MatchesDenseOracleOnRandomInstances) {
    RandomStream rng(12);
    const auto &table = two_qubit_clifford_table();
    for (int instance = 0; instance < 1000; ++instance) {
        const std::size_t n = 1 + rng.uniform_below(5);
        const std::size_t h = rng.uniform_below(n + 1);
        std::vector<std::size_t> encoded;
        for (std::size_t q = 0; q < h; ++q) {
            encoded.push_back(q);
        }
        StabilizerState s = new_mixed_encoding_state(n, QubitSubset(encoded));
        if (n >= 2) {
            for (int k = 0; k < 12; ++k) {
                const std::size_t a = rng.uniform_below(n);
                std::size_t b = rng.uniform_below(n - 1);
                b += b >= a ? 1 : 0;
                s.apply_gate(table[rng.uniform_below(table.size())], a, b);
            }
        }
        const DenseMatrix rho = dense_density_matrix(s);
        const QubitSubset region = random_region(n, rng);
        const double dense = dense_von_neumann_entropy(dense_partial_trace(rho, n, region));
        ASSERT_NEAR(dense, std::round(dense), 1e-9);
        ASSERT_EQ(static_cast<long>(std::lround(dense)), static_cast<long>(subsystem_entropy(s, region)))
            << "instance " << instance << " region " << region.str();
    }
}

TEST(SubsystemEntropy, PureStatesHaveSymmetricEntropies) {
    RandomStream rng(13);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + rng.uniform_below(30);
        const StabilizerState s = testing::random_stabilizer_state(n, n, rng);
        const QubitSubset region = random_region(n, rng);
        EXPECT_EQ(subsystem_entropy(s, region), subsystem_entropy(s, region.complement(n)));
    }
}

TEST(SubsystemEntropy, RespectsBoundsAndFullSystemValue) {
    RandomStream rng(14);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.uniform_below(40);
        const std::size_t g = rng.uniform_below(n + 1);
        const StabilizerState s = testing::random_stabilizer_state(n, g, rng);
        const QubitSubset region = random_region(n, rng);
        const std::size_t e = subsystem_entropy(s, region);
        EXPECT_LE(e, std::min(region.size(), n - g + region.size()));
        EXPECT_EQ(subsystem_entropy(s, QubitSubset::range(0, n)), n - g);
    }
}

TEST(SubsystemEntropy, SelectionMatchesAnExplicitSubstate) {
    RandomStream rng(15);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng.uniform_below(70);
        const StabilizerState s = testing::random_stabilizer_state(n, n, rng);
        BitVector selection(n);
        std::vector<PauliString> kept;
        for (std::size_t g = 0; g < n; ++g) {
            if (rng.coin()) {
                selection.set(g, true);
                kept.push_back(s.generator(g));
            }
        }
        const StabilizerState sub(n, kept);
        const QubitSubset region = random_region(n, rng);
        EXPECT_EQ(subsystem_entropy(s, region, selection), subsystem_entropy(sub, region));
    }
}

TEST(SubsystemEntropy, SignsDoNotAffectEntropies) {
    RandomStream rng(16);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + rng.uniform_below(10);
        const StabilizerState s = testing::random_stabilizer_state(n, n, rng);
        std::vector<PauliString> flipped = s.generators();
        for (PauliString &p : flipped) {
            p.negative = rng.coin();
        }
        const StabilizerState t(n, flipped);
        const QubitSubset region = random_region(n, rng);
        EXPECT_EQ(subsystem_entropy(s, region), subsystem_entropy(t, region));
    }
}

TEST(DenseOracle, DensityMatrixExamples) {
    const DenseMatrix zero = dense_density_matrix(new_basis_state(1));
    EXPECT_NEAR(std::abs(zero(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(zero(1, 1)), 0.0, 1e-12);
    const DenseMatrix bell = dense_density_matrix(state_of(2, {"XX", "ZZ"}));
    for (int r : {0, 3}) {
        for (int c : {0, 3}) {
            EXPECT_NEAR(std::abs(bell(r, c) - 0.5), 0.0, 1e-12);
        }
    }
    EXPECT_NEAR(std::abs(bell.trace() - 1.0), 0.0, 1e-12);
    EXPECT_THROW(dense_density_matrix(new_basis_state(9)), std::invalid_argument);
}

}  // namespace
}  // namespace scramble
