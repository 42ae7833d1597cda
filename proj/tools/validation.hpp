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

// Self-check suite behind `scramble validate`.

#pragma once

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scramble/clifford.hpp"
#include "scramble/dense_oracle.hpp"
#include "scramble/exact_orbit.hpp"
#include "scramble/harness.hpp"
#include "scramble/metrics.hpp"

namespace scramble::cli {

struct ValidateOptions {
    bool quick = false;
    unsigned threads = 0;
    /// Name of a check whose input is deliberately corrupted; empty in normal use.
    std::string fault;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline constexpr double kMinPValue = 1e-3;

inline double chi_square_p_value(const std::vector<std::uint64_t> &counts, double expected) {
    double stat = 0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

inline std::string describe_p(double p, std::size_t missing) {
    std::ostringstream s;
    s << "p=" << p;
    if (missing > 0) {
        s << ", " << missing << " classes never drawn";
    }
    return s.str();
}

/// Packs the four signed images of a two-qubit Clifford into 20 bits.
inline std::uint32_t gate_key(const TwoQubitClifford &gate) {
    std::uint32_t key = 0;
    for (int k = 0; k < 4; ++k) {
        key |= static_cast<std::uint32_t>(gate.images()[k].bits | (gate.images()[k].negative ? 16u : 0u)) << (5 * k);
    }
    return key;
}

inline CheckResult check_two_qubit_uniformity(const ValidateOptions &o) {
    const auto &table = two_qubit_clifford_table();
    std::vector<std::int32_t> index_of(std::size_t{1} << 20, -1);
    for (std::size_t i = 0; i < table.size(); ++i) {
        index_of[gate_key(table[i])] = static_cast<std::int32_t>(i);
    }
    std::vector<TwoQubitClifford> sampled(table.begin(), table.end());
    if (o.fault == "two_qubit_uniformity") {
        sampled[0] = sampled[1];
    }
    const std::uint64_t draws = o.quick ? 1'000'000 : 10'000'000;
    std::vector<std::uint64_t> counts(table.size(), 0);
    RandomStream rng = RandomStream::derive(0x7a11e, {1});
    for (std::uint64_t d = 0; d < draws; ++d) {
        const std::int32_t idx = index_of[gate_key(sampled[sample_two_qubit_clifford_index(rng)])];
        if (idx < 0) {
            return {"two_qubit_uniformity", false, "drew a gate outside the group"};
        }
        ++counts[static_cast<std::size_t>(idx)];
    }
    const std::size_t missing = static_cast<std::size_t>(std::count(counts.begin(), counts.end(), 0u));
    const double p = chi_square_p_value(counts, static_cast<double>(draws) / static_cast<double>(table.size()));
    return {"two_qubit_uniformity", missing == 0 && p > kMinPValue, describe_p(p, missing)};
}

inline CheckResult check_single_qubit_global(const ValidateOptions &o) {
    const std::uint64_t draws = o.quick ? 240'000 : 2'400'000;
    std::map<std::uint32_t, std::uint64_t> classes;
    RandomStream rng = RandomStream::derive(0x7a11e, {2});
    PauliString x(1), z(1);
    x.xs.set(0, true);
    z.zs.set(0, true);
    for (std::uint64_t d = 0; d < draws; ++d) {
        const GlobalCliffordTableau u = sample_global_clifford(1, rng);
        const PauliString ux = u.conjugate(x), uz = u.conjugate(z);
        const auto key = static_cast<std::uint32_t>(ux.xs.get(0) | ux.zs.get(0) << 1 | ux.negative << 2 |
                                                    uz.xs.get(0) << 3 | uz.zs.get(0) << 4 | uz.negative << 5);
        ++classes[key];
    }
    std::vector<std::uint64_t> counts;
    for (const auto &[key, c] : classes) {
        counts.push_back(c);
    }
    const std::size_t missing = classes.size() < 24 ? 24 - classes.size() : 0;
    const double p = chi_square_p_value(counts, static_cast<double>(draws) / 24.0);
    std::string detail = describe_p(p, missing);
    if (classes.size() > 24) {
        detail += ", more than 24 classes";
    }
    return {"global_single_qubit_uniformity", classes.size() == 24 && p > kMinPValue, detail};
}

inline CheckResult check_dense_oracle(const ValidateOptions &o) {
    RandomStream rng = RandomStream::derive(0x7a11e, {3});
    const int instances = o.quick ? 200 : 1000;
    for (int i = 0; i < instances; ++i) {
        const std::size_t N = 1 + rng.uniform_below(6);
        const std::size_t g = rng.uniform_below(N + 1);
        std::vector<PauliString> gens;
        for (std::size_t k = 0; k < g; ++k) {
            PauliString zk(N);
            zk.zs.set(k, true);
            zk.negative = rng.coin();
            gens.push_back(std::move(zk));
        }
        const StabilizerState state =
            apply_global_clifford(StabilizerState(N, gens), sample_global_clifford(N, rng));
        std::vector<std::size_t> members;
        for (std::size_t q = 0; q < N; ++q) {
            if (rng.coin()) {
                members.push_back(q);
            }
        }
        const QubitSubset region(members);
        const double fast = static_cast<double>(subsystem_entropy(state, region));
        const double dense = dense_subsystem_entropy(state, region);
        if (std::fabs(fast - dense) > 1e-8) {
            return {"dense_oracle", false, "mismatch at instance " + std::to_string(i)};
        }
    }
    return {"dense_oracle", true, std::to_string(instances) + " random states"};
}

inline CheckResult check_pauli_frame(const ValidateOptions &o) {
    RandomStream rng = RandomStream::derive(0x7a11e, {4});
    const int instances = o.quick ? 100 : 500;
    for (int i = 0; i < instances; ++i) {
        const std::size_t N = 2 + rng.uniform_below(7);
        const std::size_t H = 1 + rng.uniform_below(N);
        const std::size_t n = 1 + rng.uniform_below(N);
        const BrickWallCircuit circuit = build_brick_wall(N, rng.uniform_below(3 * N + 1), rng);
        const SampleSpec spec = draw_sample_spec(N, H, n, circuit.depth(), Mode::holevo, rng);
        const SampleOutcome outcome = holevo_sample(spec, circuit);
        for (std::uint64_t input = 0; input < (std::uint64_t{1} << H); ++input) {
            std::vector<PauliString> gens;
            for (std::size_t q = 0; q < N; ++q) {
                PauliString zq(N);
                zq.zs.set(q, true);
                for (std::size_t j = 0; j < H; ++j) {
                    zq.negative = zq.negative || (spec.encoded[j] == q && ((input >> j) & 1));
                }
                gens.push_back(std::move(zq));
            }
            const StabilizerState out = apply_circuit(StabilizerState(N, gens), circuit);
            if (static_cast<long>(subsystem_entropy(out, spec.retrieval)) != outcome.entropy_pure) {
                return {"pauli_frame_equivalence", false, "input-dependent entropy at instance " + std::to_string(i)};
            }
        }
        const StabilizerState mixed = apply_circuit(new_mixed_encoding_state(N, spec.encoded), circuit);
        if (static_cast<long>(subsystem_entropy(mixed, spec.retrieval)) != outcome.entropy_mixed) {
            return {"pauli_frame_equivalence", false, "mixture entropy differs at instance " + std::to_string(i)};
        }
    }
    return {"pauli_frame_equivalence", true, std::to_string(instances) + " circuits, all inputs"};
}

inline CheckResult check_exact_vs_monte_carlo(const ValidateOptions &o) {
    ExperimentConfig c;
    c.num_qubits = 5;
    c.amount = 3;
    c.ensemble = Ensemble::global_clifford;
    c.n_values = {1, 2, 3, 4, 5};
    c.samples = o.quick ? 10'000 : 100'000;
    c.master_seed = 0x7a11e5;
    c.threads = o.threads;
    const SweepResult r = run_sweep(c);
    double worst = 0;
    for (const SweepPoint &p : r.points) {
        const double exact = static_cast<double>(exact::holevo_exact(static_cast<int>(p.n), 5, 3).chi);
        const double tol = std::max(3 * p.standard_error, 1e-9);
        worst = std::max(worst, std::fabs(p.mean - exact) / tol);
    }
    std::ostringstream s;
    s << "worst |mean-exact| / max(3 stderr, 1e-9) = " << worst;
    return {"exact_vs_monte_carlo", worst <= 1.0, s.str()};
}

inline CheckResult check_depth_convergence(const ValidateOptions &o) {
    ExperimentConfig c;
    c.num_qubits = 8;
    c.amount = 3;
    c.n_values = {1, 2, 3, 4, 5, 6, 7, 8};
    c.samples = o.quick ? 4'000 : 20'000;
    c.master_seed = 0x7a11e6;
    c.threads = o.threads;
    c.depth_rule = DepthRule::multiple_of_n(3);
    const SweepResult a = run_sweep(c);
    c.depth_rule = DepthRule::multiple_of_n(4);
    const SweepResult b = run_sweep(c);
    double worst = 0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const double se = std::hypot(a.points[i].standard_error, b.points[i].standard_error);
        worst = std::max(worst, std::fabs(a.points[i].mean - b.points[i].mean) / std::max(3 * se, 1e-9));
    }
    std::ostringstream s;
    s << "worst |t=3N - t=4N| / (3 combined stderr) = " << worst;
    return {"depth_convergence", worst <= 1.0, s.str()};
}

inline CheckResult check_orbit_integrality(const ValidateOptions &o) {
    const int max_exact = o.quick ? 10 : 12;
    try {
        for (int N = 1; N <= max_exact; ++N) {
            for (int h = 0; h <= N; ++h) {
                for (int n = 1; n <= N; ++n) {
                    exact::enumerate_orbit_terms(n, N, h, true);
                }
            }
        }
        for (int N = 1; N <= 24; N += (o.quick ? 3 : 1)) {
            for (int h = 0; h <= N; h += 2) {
                for (int n = 1; n <= N; ++n) {
                    const double r = exact::expected_entropy_rational(n, N, h).convert_to<double>();
                    const double l = static_cast<double>(exact::expected_entropy_exact(n, N, h));
                    if (std::fabs(r - l) > 1e-10 * std::max(1.0, std::fabs(r))) {
                        return {"orbit_integrality", false,
                                "log-domain disagreement at N=" + std::to_string(N) + " h=" + std::to_string(h) +
                                    " n=" + std::to_string(n)};
                    }
                }
            }
        }
    } catch (const std::logic_error &e) {
        return {"orbit_integrality", false, e.what()};
    }
    return {"orbit_integrality", true, "integral class sizes, log and rational forms agree"};
}

}  // namespace detail

/// Runs every check in a fixed order, printing one table row per check.
inline bool run_validation(const ValidateOptions &o, std::ostream &out) {
    const std::vector<std::function<CheckResult(const ValidateOptions &)>> checks = {
        detail::check_two_qubit_uniformity, detail::check_single_qubit_global, detail::check_dense_oracle,
        detail::check_pauli_frame,          detail::check_exact_vs_monte_carlo, detail::check_depth_convergence,
        detail::check_orbit_integrality};
    bool all = true;
    for (const auto &check : checks) {
        const CheckResult r = check(o);
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n' << std::flush;
    }
    out << (all ? "validate: all checks passed" : "validate: FAILED") << '\n';
    return all;
}

}  // namespace scramble::cli
