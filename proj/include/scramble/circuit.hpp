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

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scramble/clifford.hpp"
#include "scramble/random.hpp"
#include "scramble/stabilizer_state.hpp"

namespace scramble {

/// One two-qubit gate of a brick-wall layer. `gate_index` points into the
/// canonical enumeration of the two-qubit Clifford group.
struct Brick {
    std::size_t qubit_a = 0;
    std::size_t qubit_b = 0;
    std::uint16_t gate_index = 0;

    const TwoQubitClifford &gate() const { return two_qubit_clifford_table()[gate_index]; }
    bool operator==(const Brick &) const = default;
};

using BrickLayer = std::vector<Brick>;

/// Qubit pairs of layer `layer` on a ring of `num_qubits` qubits.
///
/// Even layers pair (0,1),(2,3),...; odd layers pair (1,2),(3,4),... and wrap
/// (N-1,0) when N is even. For odd N the idle qubit is N-1 on even layers and
/// 0 on odd layers.
inline std::vector<std::pair<std::size_t, std::size_t>> brick_wall_pairs(std::size_t num_qubits, std::size_t layer) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t first = layer % 2;
    for (std::size_t k = 0; k < num_qubits / 2; ++k) {
        const std::size_t a = first + 2 * k;
        pairs.emplace_back(a, (a + 1) % num_qubits);
    }
    return pairs;
}

class BrickWallCircuit {
   public:
    BrickWallCircuit(std::size_t num_qubits, std::vector<BrickLayer> layers)
        : num_qubits_(num_qubits), layers_(std::move(layers)) {
        if (num_qubits_ < 2) {
            throw std::invalid_argument("BrickWallCircuit: need at least two qubits");
        }
        for (const BrickLayer &layer : layers_) {
            std::vector<bool> used(num_qubits_, false);
            for (const Brick &b : layer) {
                if (b.qubit_a >= num_qubits_ || b.qubit_b >= num_qubits_ || b.qubit_a == b.qubit_b) {
                    throw std::invalid_argument("BrickWallCircuit: invalid brick qubits");
                }
                if (b.gate_index >= TwoQubitClifford::kGroupOrder) {
                    throw std::invalid_argument("BrickWallCircuit: gate index out of range");
                }
                if (used[b.qubit_a] || used[b.qubit_b]) {
                    throw std::invalid_argument("BrickWallCircuit: bricks in a layer must be disjoint");
                }
                used[b.qubit_a] = used[b.qubit_b] = true;
            }
        }
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t depth() const { return layers_.size(); }
    const std::vector<BrickLayer> &layers() const { return layers_; }

    /// One line per brick: `layer qubit_a qubit_b gate_index`.
    void dump(std::ostream &out) const {
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            for (const Brick &b : layers_[l]) {
                out << l << ' ' << b.qubit_a << ' ' << b.qubit_b << ' ' << b.gate_index << '\n';
            }
        }
    }

    /// Inverse of dump(); the depth is one past the largest layer index seen.
    static BrickWallCircuit parse(std::size_t num_qubits, std::istream &in) {
        std::vector<BrickLayer> layers;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            std::istringstream fields(line);
            std::size_t layer = 0, a = 0, b = 0, index = 0;
            if (!(fields >> layer >> a >> b >> index)) {
                throw std::invalid_argument("BrickWallCircuit::parse: malformed line '" + line + "'");
            }
            if (layer >= layers.size()) {
                layers.resize(layer + 1);
            }
            layers[layer].push_back(Brick{a, b, static_cast<std::uint16_t>(index)});
        }
        return BrickWallCircuit(num_qubits, std::move(layers));
    }

    bool operator==(const BrickWallCircuit &) const = default;

   private:
    std::size_t num_qubits_;
    std::vector<BrickLayer> layers_;
};

/// Random brick-wall circuit of `depth` layers; every brick is an independent
/// uniform two-qubit Clifford.
inline BrickWallCircuit build_brick_wall(std::size_t num_qubits, std::size_t depth, RandomStream &rng) {
    if (num_qubits < 2) {
        throw std::invalid_argument("build_brick_wall: need at least two qubits");
    }
    std::vector<BrickLayer> layers(depth);
    for (std::size_t l = 0; l < depth; ++l) {
        for (auto [a, b] : brick_wall_pairs(num_qubits, l)) {
            layers[l].push_back(Brick{a, b, static_cast<std::uint16_t>(sample_two_qubit_clifford_index(rng))});
        }
    }
    return BrickWallCircuit(num_qubits, std::move(layers));
}

/// Applies the circuit in place to the first `circuit.num_qubits()` qubits of
/// `state`; any further qubits (e.g. a purifying reference) are untouched.
inline void apply_circuit_in_place(StabilizerState &state, const BrickWallCircuit &circuit) {
    if (state.num_qubits() < circuit.num_qubits()) {
        throw std::invalid_argument("apply_circuit: circuit acts on more qubits than the state has");
    }
    for (const BrickLayer &layer : circuit.layers()) {
        for (const Brick &b : layer) {
            state.apply_gate(b.gate(), b.qubit_a, b.qubit_b);
        }
    }
}

inline StabilizerState apply_circuit(StabilizerState state, const BrickWallCircuit &circuit) {
    apply_circuit_in_place(state, circuit);
    return state;
}

}  // namespace scramble
