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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Pass criterion names as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scramble/dense_oracle.hpp"
#include "scramble/exact_orbit.hpp"
#include "scramble/harness.hpp"
#include "test_support.hpp"
#include "validation.hpp"

namespace {

using namespace scramble;

struct Verdict {
    bool passed = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::vector<std::size_t> all_n(std::size_t N) {
    std::vector<std::size_t> ns(N);
    for (std::size_t i = 0; i < N; ++i) {
        ns[i] = i + 1;
    }
    return ns;
}

double exact_chi(std::size_t n, std::size_t N, std::size_t H) {
    return static_cast<double>(exact::holevo_exact(static_cast<int>(n), static_cast<int>(N), static_cast<int>(H)).chi);
}

Verdict exact_vs_simulation() {
    const auto start = Clock::now();
    ExperimentConfig c;
    c.num_qubits = 5;
    c.amount = 3;
    c.n_values = all_n(5);
    c.samples = 100'000;
    c.ensemble = Ensemble::global_clifford;
    c.master_seed = 0xa5a5;
    const SweepResult r = run_sweep(c);
    bool ok = true;
    std::ostringstream s;
    for (const SweepPoint &p : r.points) {
        const double exact = exact_chi(p.n, 5, 3);
        const double dev = std::fabs(p.mean - exact);
        // At n = N the value is deterministic and the stderr vanishes.
        ok = ok && dev <= std::max(3 * p.standard_error, 1e-12);
        s << fmt("n=%zu %.4f/%.4f(+-%.4f) ", p.n, p.mean, exact, p.standard_error);
    }
    const double elapsed = seconds_since(start);
    s << fmt("[%.1fs]", elapsed);
    return {ok && elapsed < 120, s.str()};
}

Verdict deep_brick_wall_convergence() {
    const auto start = Clock::now();
    ExperimentConfig c;
    c.num_qubits = 19;
    c.amount = 8;
    c.n_values = all_n(19);
    c.samples = 10'000;
    c.master_seed = 0x1908;
    c.depth_rule = DepthRule::layers(57);
    const SweepResult a = run_sweep(c);
    c.master_seed = 0x1909;
    c.depth_rule = DepthRule::layers(76);
    const SweepResult b = run_sweep(c);
    double worst_exact = 0, worst_depth = 0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const SweepPoint &p = a.points[i], &q = b.points[i];
        const double exact = exact_chi(p.n, 19, 8);
        worst_exact = std::max(worst_exact, std::fabs(p.mean - exact) / std::max(3 * p.standard_error, 0.03));
        const double combined = std::hypot(p.standard_error, q.standard_error);
        worst_depth = std::max(worst_depth, std::fabs(p.mean - q.mean) / std::max(3 * combined, 1e-12));
    }
    const double elapsed = seconds_since(start);
    return {worst_exact <= 1 && worst_depth <= 1 && elapsed < 900,
            fmt("max |t=57 - exact| / max(3 stderr, 0.03) = %.3f; max |t=57 - t=76| / (3 combined stderr) = %.3f "
                "[%.1fs]",
                worst_exact, worst_depth, elapsed)};
}

Verdict phase_transition_structure() {
    const auto start = Clock::now();
    const std::size_t N = 76, H = 32;
    std::vector<double> chi(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        chi[n] = exact_chi(n, N, H);
    }
    double low_max = 0, high_min = static_cast<double>(H);
    std::size_t low_worst = 0, high_worst = 0;
    for (std::size_t n = 1; n <= 34; ++n) {
        if (chi[n] >= low_max) {
            low_max = chi[n];
            low_worst = n;
        }
    }
    for (std::size_t n = 58; n <= N; ++n) {
        if (chi[n] <= high_min) {
            high_min = chi[n];
            high_worst = n;
        }
    }
    std::vector<double> xs, ys;
    for (std::size_t n = 39; n <= 52; ++n) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(chi[n]);
    }
    const LinearFit fit = fit_line(xs, ys);
    const bool low_ok = low_max < 1e-3, high_ok = high_min > static_cast<double>(H) - 1e-3;
    const bool slope_ok = std::fabs(fit.slope - 2.0) <= 0.05;
    const double elapsed = seconds_since(start);
    return {low_ok && high_ok && slope_ok && elapsed < 60,
            fmt("max chi(n<=34) = %.6f at n=%zu (%s); slope(39..52) = %.4f (%s); min chi(n>=58) = H - %.6f at n=%zu "
                "(%s) [%.1fs]",
                low_max, low_worst, low_ok ? "ok" : "above 1e-3", fit.slope, slope_ok ? "ok" : "off", H - high_min,
                high_worst, high_ok ? "ok" : "below H - 1e-3", elapsed)};
}

Verdict finite_size_scaling_families() {
    struct Family {
        std::size_t N, H, n_below, n_above;
    };
    // Fixed ratios n/N well inside the two plateaus.
    const std::vector<Family> families = {{17, 6, 7, 14}, {19, 8, 7, 17}, {21, 10, 8, 18}};
    bool ok = true;
    std::ostringstream s;
    for (const Family &f : families) {
        std::vector<double> ns, log_d1, log_d2;
        bool positive = true;
        for (std::size_t k = 1; k <= 4; ++k) {
            const int N = static_cast<int>(k * f.N), H = static_cast<int>(k * f.H);
            const auto below = exact::holevo_exact(static_cast<int>(k * f.n_below), N, H);
            const auto above = exact::holevo_exact(static_cast<int>(k * f.n_above), N, H);
            const double d1 = static_cast<double>(below.chi), d2 = static_cast<double>(above.deficit);
            positive = positive && d1 > 0 && d2 > 0;
            ns.push_back(N);
            log_d1.push_back(std::log(d1));
            log_d2.push_back(std::log(d2));
        }
        if (!positive) {
            ok = false;
            s << fmt("%zu:%zu non-positive deviation; ", f.N, f.H);
            continue;
        }
        const LinearFit a = fit_line(ns, log_d1), b = fit_line(ns, log_d2);
        const bool fam_ok = a.r_squared > 0.99 && b.r_squared > 0.99 && a.slope < 0 && b.slope < 0;
        ok = ok && fam_ok;
        s << fmt("%zu:%zu d1 slope %.4f R2 %.5f, d2 slope %.4f R2 %.5f; ", f.N, f.H, a.slope, a.r_squared, b.slope,
                 b.r_squared);
    }
    return {ok, s.str()};
}

Verdict coherent_plateaus() {
    const auto start = Clock::now();
    ExperimentConfig c;
    c.num_qubits = 19;
    c.amount = 8;
    c.mode = Mode::coherent;
    c.n_values = all_n(19);
    c.samples = 10'000;
    c.master_seed = 0xc0;
    c.depth_rule = DepthRule::layers(57);
    const SweepResult r = run_sweep(c);
    const double C = 8;
    double worst_low = 0, worst_high = 0;
    for (const SweepPoint &p : r.points) {
        if (p.n <= 4) {
            worst_low = std::max(worst_low, std::fabs(p.mean / C + 1));
        }
        if (p.n >= 15) {
            worst_high = std::max(worst_high, std::fabs(p.mean / C - 1));
        }
    }
    const double at9 = r.at(9).mean, at10 = r.at(10).mean;
    const double elapsed = seconds_since(start);
    return {worst_low <= 0.05 && worst_high <= 0.05 && at9 < 0 && at10 > 0 && elapsed < 900,
            fmt("max |eta/C + 1| (n<=4) = %.4f; max |eta/C - 1| (n>=15) = %.4f; eta(9) = %.4f, eta(10) = %.4f "
                "[%.1fs]",
                worst_low, worst_high, at9, at10, elapsed)};
}

Verdict dynamics() {
    const auto start = Clock::now();
    const std::size_t N = 20;
    std::vector<std::size_t> schedule;
    for (std::size_t t = 2; t <= 40; ++t) {
        schedule.push_back(t);
    }
    bool decreasing = true, rates_positive = true;
    std::vector<double> rates;
    std::ostringstream s;
    for (std::size_t H : {2, 6, 10, 14, 18}) {
        ExperimentConfig c;
        c.num_qubits = N;
        c.amount = H;
        c.n_values = all_n(N);
        c.samples = 10'000;
        c.master_seed = 0xd0 + H;
        const DynamicsResult d = run_dynamics(c, schedule, 3 * N);
        std::size_t violations = 0;
        for (std::size_t i = 0; i + 1 < schedule.size(); ++i) {
            if (schedule[i] < 6) {
                continue;
            }
            const double se = std::hypot(d.distance_stderr[i], d.distance_stderr[i + 1]);
            if (d.distance[i + 1] > d.distance[i] + 2 * se) {
                ++violations;
                s << fmt("H=%zu D(%zu)=%.3g > D(%zu)=%.3g + 2*%.2g; ", H, schedule[i + 1], d.distance[i + 1],
                         schedule[i], d.distance[i], se);
            }
        }
        decreasing = decreasing && violations == 0;
        double rate = NAN;
        try {
            const DecayRate k = decay_rate(d, 7, 12);
            rate = k.rate;
            s << fmt("H=%zu k=%.4f [%.4f, %.4f] D(6)=%.3g D(40)=%.3g; ", H, k.rate, k.lower, k.upper, d.at(6),
                     d.at(40));
        } catch (const DegenerateDistanceError &e) {
            s << "H=" << H << " " << e.what() << "; ";
        }
        rates_positive = rates_positive && rate > 0;
        rates.push_back(rate);
    }
    // The decay rate falls with H and turns back up at the last amount, H/N = 0.9.
    bool ordered = rates.back() > rates[rates.size() - 2];
    s << "ordering:";
    for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
        s << (rates[i + 1] < rates[i] ? " >" : " <");
        ordered = ordered && (i + 2 == rates.size() || rates[i + 1] < rates[i]);
    }
    s << fmt(" [%.1fs]", seconds_since(start));
    return {decreasing && rates_positive && ordered, s.str()};
}

Verdict deviation_peaks() {
    const auto start = Clock::now();
    ExperimentConfig c;
    c.num_qubits = 38;
    c.amount = 16;
    c.n_values = all_n(38);
    c.samples = 10'000;
    c.master_seed = 0x3816;
    c.depth_rule = DepthRule::layers(114);
    const SweepResult r = run_sweep(c);
    auto near = [](std::size_t n, std::size_t centre) { return n + 1 >= centre && n <= centre + 1; };
    double outside_max = 0, peak19 = 0, peak27 = 0;
    std::size_t outside_worst = 0;
    for (const SweepPoint &p : r.points) {
        if (near(p.n, 19)) {
            peak19 = std::max(peak19, p.stddev);
        } else if (near(p.n, 27)) {
            peak27 = std::max(peak27, p.stddev);
        } else if (p.stddev > outside_max) {
            outside_max = p.stddev;
            outside_worst = p.n;
        }
    }
    return {outside_max < 0.05 && peak19 > 0.2 && peak27 > 0.2,
            fmt("max sigma away from the peaks = %.4f at n=%zu; peak sigma near 19 = %.4f, near 27 = %.4f [%.1fs]",
                outside_max, outside_worst, peak19, peak27, seconds_since(start))};
}

Verdict oracle_suite() {
    std::ostringstream s;
    // Stabilizer entropy against dense von Neumann entropy.
    RandomStream rng(0x0dc1e);
    bool dense_ok = true;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t N = 1 + rng.uniform_below(5);
        const StabilizerState state = testing::random_stabilizer_state(N, rng.uniform_below(N + 1), rng);
        std::vector<std::size_t> members;
        for (std::size_t q = 0; q < N; ++q) {
            if (rng.coin()) {
                members.push_back(q);
            }
        }
        const QubitSubset region(members);
        const double dense = dense_subsystem_entropy(state, region);
        dense_ok = dense_ok && std::fabs(dense - std::round(dense)) < 1e-9 &&
                   static_cast<long>(std::lround(dense)) == static_cast<long>(subsystem_entropy(state, region));
    }
    s << "dense entropies " << (dense_ok ? "match" : "MISMATCH") << "; ";

    // Two-qubit sampler uniformity.
    const auto &table = two_qubit_clifford_table();
    std::vector<std::int32_t> index_of(std::size_t{1} << 20, -1);
    for (std::size_t i = 0; i < table.size(); ++i) {
        index_of[cli::detail::gate_key(table[i])] = static_cast<std::int32_t>(i);
    }
    std::vector<std::uint64_t> counts(table.size(), 0);
    RandomStream draws(0x5a3b1e);
    bool in_group = true;
    const std::uint64_t total = 10'000'000;
    for (std::uint64_t d = 0; d < total; ++d) {
        const std::int32_t idx = index_of[cli::detail::gate_key(sample_two_qubit_clifford(draws))];
        in_group = in_group && idx >= 0;
        ++counts[static_cast<std::size_t>(std::max(idx, 0))];
    }
    const double p = cli::detail::chi_square_p_value(counts, static_cast<double>(total) / 11520.0);
    const bool sampler_ok = in_group && p > 1e-3;
    s << fmt("sampler chi-square p = %.4f; ", p);

    // Closed-form maximizer against brute force.
    std::size_t cases = 0, mismatches = 0, outer_mismatches = 0;
    for (int N = 1; N <= 24; ++N) {
        for (int h = 0; h <= N; ++h) {
            for (int n = 1; n <= N; ++n) {
                ++cases;
                if (!exact::argmax_orbit_weight(n, N, h).same_partition(exact::brute_force_argmax(n, N, h))) {
                    ++mismatches;
                    outer_mismatches += 2 * n < N - h || 2 * n > N + h;
                }
            }
        }
    }
    const bool argmax_ok = mismatches == 0;
    s << fmt("argmax closed form differs from brute force in %zu of %zu cases (%zu outside the middle regime); ",
             mismatches, cases, outer_mismatches);

    // Pauli-frame equivalence over every input string.
    bool frame_ok = true;
    RandomStream frames(0xf4a3e);
    for (int i = 0; i < 200 && frame_ok; ++i) {
        const std::size_t N = 2 + frames.uniform_below(5);
        const std::size_t H = 1 + frames.uniform_below(N);
        const std::size_t n = 1 + frames.uniform_below(N);
        const BrickWallCircuit circuit = build_brick_wall(N, frames.uniform_below(3 * N + 1), frames);
        const SampleSpec spec = draw_sample_spec(N, H, n, circuit.depth(), Mode::holevo, frames);
        const SampleOutcome outcome = holevo_sample(spec, circuit);
        for (std::uint64_t input = 0; input < (std::uint64_t{1} << H); ++input) {
            std::vector<PauliString> gens;
            for (std::size_t q = 0; q < N; ++q) {
                PauliString z(N);
                z.zs.set(q, true);
                for (std::size_t j = 0; j < H; ++j) {
                    z.negative = z.negative || (spec.encoded[j] == q && ((input >> j) & 1));
                }
                gens.push_back(std::move(z));
            }
            const StabilizerState out = apply_circuit(StabilizerState(N, gens), circuit);
            frame_ok = frame_ok && static_cast<long>(subsystem_entropy(out, spec.retrieval)) == outcome.entropy_pure;
        }
    }
    s << "Pauli-frame equivalence " << (frame_ok ? "holds" : "FAILS");
    return {dense_ok && sampler_ok && argmax_ok && frame_ok, s.str()};
}

Verdict critical_exponent() {
    const std::vector<double> taus{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    const double r_h = 8.0 / 19;
    const double first = exact::critical_exponent_estimate(exact::Transition::first, r_h, taus);
    const double second = exact::critical_exponent_estimate(exact::Transition::second, r_h, taus);
    return {std::fabs(first - 1) <= 1e-6 && std::fabs(second - 1) <= 1e-6,
            fmt("first %.9f, second %.9f", first, second)};
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"exact_vs_simulation", exact_vs_simulation},
        {"deep_brick_wall_convergence", deep_brick_wall_convergence},
        {"phase_transition_structure", phase_transition_structure},
        {"finite_size_scaling", finite_size_scaling_families},
        {"coherent_plateaus", coherent_plateaus},
        {"dynamics", dynamics},
        {"deviation_peaks", deviation_peaks},
        {"oracle_suite", oracle_suite},
        {"critical_exponent", critical_exponent},
    };
    const std::vector<std::string> selected(argv + 1, argv + argc);
    bool all = true;
    for (const auto &[name, check] : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), name) == selected.end()) {
            continue;
        }
        Verdict v;
        try {
            v = check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        all = all && v.passed;
        std::cout << (v.passed ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    }
    return all ? 0 : 1;
}
