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

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <sstream>
#include <vector>

#include "scramble/circuit.hpp"
#include "test_support.hpp"

namespace scramble {
namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(BrickWall, EvenRingWraps) {
    EXPECT_EQ(brick_wall_pairs(4, 0), (Pairs{{0, 1}, {2, 3}}));
    EXPECT_EQ(brick_wall_pairs(4, 1), (Pairs{{1, 2}, {3, 0}}));
}

TEST(BrickWall, OddRingIdlesAlternateQubits) {
    EXPECT_EQ(brick_wall_pairs(5, 0), (Pairs{{0, 1}, {2, 3}}));
    EXPECT_EQ(brick_wall_pairs(5, 1), (Pairs{{1, 2}, {3, 4}}));
    EXPECT_EQ(brick_wall_pairs(5, 2), brick_wall_pairs(5, 0));
}

TEST(BrickWall, BuildsTheRequestedLayers) {
    RandomStream rng(1);
    const BrickWallCircuit c = build_brick_wall(4, 2, rng);
    ASSERT_EQ(c.depth(), 2u);
    for (std::size_t l = 0; l < 2; ++l) {
        Pairs pairs;
        for (const Brick &b : c.layers()[l]) {
            pairs.emplace_back(b.qubit_a, b.qubit_b);
        }
        EXPECT_EQ(pairs, brick_wall_pairs(4, l));
    }
    EXPECT_THROW(build_brick_wall(1, 3, rng), std::invalid_argument);
}

TEST(BrickWall, EmptyCircuitIsIdentity) {
    RandomStream rng(2);
    const BrickWallCircuit c = build_brick_wall(6, 0, rng);
    EXPECT_EQ(c.depth(), 0u);
    const StabilizerState s = testing::random_stabilizer_state(6, 4, rng);
    EXPECT_EQ(apply_circuit(s, c), s);
}

TEST(BrickWall, IdenticalStreamsGiveIdenticalCircuits) {
    RandomStream a(3), b(3);
    EXPECT_EQ(build_brick_wall(9, 12, a), build_brick_wall(9, 12, b));
}

TEST(BrickWall, RejectsOverlappingBricks) {
    std::vector<BrickLayer> layers{{Brick{0, 1, 0}, Brick{1, 2, 0}}};
    EXPECT_THROW(BrickWallCircuit(3, layers), std::invalid_argument);
    std::vector<BrickLayer> bad_index{{Brick{0, 1, 11520}}};
    EXPECT_THROW(BrickWallCircuit(3, bad_index), std::invalid_argument);
}

TEST(BrickWall, DumpAndParseRoundTrip) {
    RandomStream rng(4);
    const BrickWallCircuit c = build_brick_wall(7, 5, rng);
    std::stringstream text;
    c.dump(text);
    EXPECT_EQ(BrickWallCircuit::parse(7, text), c);
    std::istringstream bad("0 1 x 3\n");
    EXPECT_THROW(BrickWallCircuit::parse(7, bad), std::invalid_argument);
}

TEST(BrickWall, WithinLayerOrderDoesNotMatter) {
    RandomStream rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const BrickWallCircuit c = build_brick_wall(8, 6, rng);
        std::vector<BrickLayer> reversed = c.layers();
        for (BrickLayer &layer : reversed) {
            std::reverse(layer.begin(), layer.end());
        }
        const StabilizerState s = new_basis_state(8);
        EXPECT_EQ(apply_circuit(s, c), apply_circuit(s, BrickWallCircuit(8, reversed)));
    }
}

TEST(BrickWall, SingleBrickAverageOverTheWholeGroup) {
    long total = 0;
    for (std::size_t index = 0; index < TwoQubitClifford::kGroupOrder; ++index) {
        const BrickWallCircuit c(2, {{Brick{0, 1, static_cast<std::uint16_t>(index)}}});
        total += static_cast<long>(subsystem_entropy(apply_circuit(new_basis_state(2), c), QubitSubset{0}));
    }
    EXPECT_EQ(5 * total, 2 * static_cast<long>(TwoQubitClifford::kGroupOrder));
}

TEST(BrickWall, ReferenceQubitsAreUntouched) {
    RandomStream rng(6);
    const BrickWallCircuit c = build_brick_wall(5, 10, rng);
    StabilizerState s = new_purified_state(5, 2, QubitSubset{1, 3});
    apply_circuit_in_place(s, c);
    EXPECT_EQ(subsystem_entropy(s, QubitSubset{5, 6}), 2u);
    EXPECT_THROW(apply_circuit_in_place(s, build_brick_wall(8, 1, rng)), std::invalid_argument);
}

// On an even ring, shifting every qubit by two maps the brick pattern onto
// itself, so entropies of Q and Q + 2 have the same distribution.
TEST(BrickWall, RingRotationLeavesEntropyStatisticsUnchanged) {
    RandomStream rng(7);
    const int draws = 20000;
    std::map<std::size_t, long> left, right;
    for (int i = 0; i < draws; ++i) {
        const StabilizerState s = apply_circuit(new_basis_state(6), build_brick_wall(6, 3, rng));
        ++left[subsystem_entropy(s, QubitSubset{0, 1, 5})];
        ++right[subsystem_entropy(s, QubitSubset{2, 3, 1})];
    }
    double stat = 0;
    int cells = 0;
    for (std::size_t e = 0; e <= 3; ++e) {
        const double a = static_cast<double>(left[e]), b = static_cast<double>(right[e]);
        if (a + b > 0) {
            stat += (a - b) * (a - b) / (a + b);
            ++cells;
        }
    }
    boost::math::chi_squared dist(cells - 1);
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 1e-3);
}

}  // namespace
}  // namespace scramble
