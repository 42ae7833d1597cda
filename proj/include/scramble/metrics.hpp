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
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scramble/circuit.hpp"
#include "scramble/clifford.hpp"
#include "scramble/random.hpp"
#include "scramble/stabilizer_state.hpp"

namespace scramble {

enum class Mode { holevo, coherent };

inline std::string_view to_string(Mode mode) { return mode == Mode::holevo ? "holevo" : "coherent"; }

inline Mode parse_mode(std::string_view text) {
    if (text == "holevo") {
        return Mode::holevo;
    }
    if (text == "coherent") {
        return Mode::coherent;
    }
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected holevo or coherent)");
}

/// One Monte Carlo sample point: system size, encoded amount (H classical bits
/// or C logical qubits), the retrieval subsystem Q and the encoded qubits.
struct SampleSpec {
    std::size_t num_qubits = 0;
    std::size_t amount = 0;
    std::size_t n = 0;
    std::size_t depth = 0;
    Mode mode = Mode::holevo;
    QubitSubset retrieval;
    QubitSubset encoded;

    void validate() const {
        if (num_qubits == 0) {
            throw std::invalid_argument("SampleSpec: N must be positive");
        }
        if (n < 1 || n > num_qubits) {
            throw std::invalid_argument("SampleSpec: n must lie in [1, N]");
        }
        if (amount < 1 || amount > num_qubits) {
            throw std::invalid_argument("SampleSpec: amount must lie in [1, N]");
        }
        if (retrieval.size() != n) {
            throw std::invalid_argument("SampleSpec: |Q| must equal n");
        }
        if (encoded.size() != amount) {
            throw std::invalid_argument("SampleSpec: |encoded| must equal amount");
        }
        retrieval.check_within(num_qubits);
        encoded.check_within(num_qubits);
    }
};

struct SampleOutcome {
    /// Holevo information or coherent information, in bits.
    long value = 0;
    Mode mode = Mode::holevo;
    /// Holevo: S_Q of the encoded mixture. Coherent: S(rho^Q).
    long entropy_mixed = 0;
    /// Holevo: S_Q of the |0...0> representative. Coherent: S(rho^{QR}).
    long entropy_pure = 0;
};

/// Uniform size-k subset of [0, N) (partial Fisher-Yates).
inline QubitSubset draw_subset(std::size_t num_qubits, std::size_t k, RandomStream &rng) {
    if (k > num_qubits) {
        throw std::invalid_argument("draw_subset: subset larger than the system");
    }
    std::vector<std::size_t> pool(num_qubits);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(num_qubits - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return QubitSubset(std::move(pool));
}

/// Independent uniform choices of Q (size n) and the encoded set (size amount).
inline SampleSpec draw_sample_spec(std::size_t num_qubits, std::size_t amount, std::size_t n, std::size_t depth,
                                   Mode mode, RandomStream &rng) {
    if (num_qubits == 0 || n < 1 || n > num_qubits || amount < 1 || amount > num_qubits) {
        throw std::invalid_argument("draw_sample_spec: need 1 <= n <= N and 1 <= amount <= N");
    }
    SampleSpec spec;
    spec.num_qubits = num_qubits;
    spec.amount = amount;
    spec.n = n;
    spec.depth = depth;
    spec.mode = mode;
    spec.retrieval = draw_subset(num_qubits, n, rng);
    spec.encoded = draw_subset(num_qubits, amount, rng);
    return spec;
}

namespace detail {

/// Evolves |0...0> with `evolve` and reads off both Holevo terms from the same
/// realization. The encoded mixture is generated by the Z_j generators with j
/// outside `encoded`, which are a subset of the |0...0> generators, so both
/// terms come from one tableau.
template <typename Evolve>
SampleOutcome holevo_from_evolution(const SampleSpec &spec, Evolve &&evolve) {
    if (spec.mode != Mode::holevo) {
        throw std::invalid_argument("holevo_sample: spec mode must be holevo");
    }
    spec.validate();
    StabilizerState state = new_basis_state(spec.num_qubits);
    evolve(state);
    BitVector unencoded(spec.num_qubits);
    for (std::size_t q = 0; q < spec.num_qubits; ++q) {
        unencoded.set(q, !spec.encoded.contains(q));
    }
    SampleOutcome out;
    out.mode = Mode::holevo;
    out.entropy_mixed = static_cast<long>(subsystem_entropy(state, spec.retrieval, unencoded));
    out.entropy_pure = static_cast<long>(subsystem_entropy(state, spec.retrieval));
    out.value = out.entropy_mixed - out.entropy_pure;
    if (out.value < 0 || out.value > static_cast<long>(spec.amount) ||
        out.value > 2 * static_cast<long>(spec.n)) {
        throw std::logic_error("holevo_sample: value outside [0, min(2n, H)]");
    }
    return out;
}

}  // namespace detail

/// chi = S_Q(U rho_H U^dag) - S_Q(U |0...0><0...0| U^dag) for one circuit realization.
inline SampleOutcome holevo_sample(const SampleSpec &spec, const BrickWallCircuit &circuit) {
    if (circuit.num_qubits() != spec.num_qubits) {
        throw std::invalid_argument("holevo_sample: circuit does not match N");
    }
    return detail::holevo_from_evolution(spec, [&](StabilizerState &s) { apply_circuit_in_place(s, circuit); });
}

/// Same quantity with a global Clifford in place of the brick-wall circuit.
inline SampleOutcome holevo_sample(const SampleSpec &spec, const GlobalCliffordTableau &unitary) {
    if (unitary.num_qubits() != spec.num_qubits) {
        throw std::invalid_argument("holevo_sample: unitary does not match N");
    }
    return detail::holevo_from_evolution(spec, [&](StabilizerState &s) { s = apply_global_clifford(s, unitary); });
}

/// eta = S(rho^Q) - S(rho^{QR}) on the purified state after the circuit acts
/// on the system qubits; R is the whole reference.
inline SampleOutcome coherent_sample(const SampleSpec &spec, const BrickWallCircuit &circuit) {
    if (spec.mode != Mode::coherent) {
        throw std::invalid_argument("coherent_sample: spec mode must be coherent");
    }
    spec.validate();
    if (circuit.num_qubits() != spec.num_qubits) {
        throw std::invalid_argument("coherent_sample: circuit does not match N");
    }
    StabilizerState state = new_purified_state(spec.num_qubits, spec.amount, spec.encoded);
    apply_circuit_in_place(state, circuit);
    const QubitSubset reference = QubitSubset::range(spec.num_qubits, spec.num_qubits + spec.amount);
    SampleOutcome out;
    out.mode = Mode::coherent;
    out.entropy_mixed = static_cast<long>(subsystem_entropy(state, spec.retrieval));
    out.entropy_pure = static_cast<long>(subsystem_entropy(state, spec.retrieval.united_with(reference)));
    out.value = out.entropy_mixed - out.entropy_pure;
    const long c = static_cast<long>(spec.amount);
    if (out.value < -c || out.value > c) {
        throw std::logic_error("coherent_sample: value outside [-C, C]");
    }
    return out;
}

}  // namespace scramble
