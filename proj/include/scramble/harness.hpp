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

// Monte Carlo sweeps over the retrieval size n and circuit depth t.
//
// Every sample owns a random stream derived from (master seed, mode, N,
// amount, n, t, sample index, ensemble), and per-sample values are integers
// accumulated as exact integer sums. Results are therefore bit-identical for
// a given seed whatever the thread count or checkpoint/resume history.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <limits>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "scramble/circuit.hpp"
#include "scramble/clifford.hpp"
#include "scramble/exact_orbit.hpp"
#include "scramble/metrics.hpp"
#include "scramble/random.hpp"

namespace scramble {

enum class Ensemble { brick_wall, global_clifford };

inline std::string_view to_string(Ensemble e) { return e == Ensemble::brick_wall ? "brick_wall" : "global_clifford"; }

/// Depth as an explicit layer count or as a multiple of N.
struct DepthRule {
    enum class Kind { layers, multiple_of_n };
    Kind kind = Kind::multiple_of_n;
    std::size_t value = 3;

    static DepthRule layers(std::size_t t) { return {Kind::layers, t}; }
    static DepthRule multiple_of_n(std::size_t k) { return {Kind::multiple_of_n, k}; }

    std::size_t resolve(std::size_t num_qubits) const { return kind == Kind::layers ? value : value * num_qubits; }
};

struct ExperimentConfig {
    std::size_t num_qubits = 0;
    std::size_t amount = 0;
    Mode mode = Mode::holevo;
    DepthRule depth_rule;
    std::vector<std::size_t> n_values;
    std::uint64_t samples = 10000;
    std::uint64_t master_seed = 0;
    /// Samples between checkpoint flushes; 0 disables checkpointing.
    std::uint64_t checkpoint_interval = 0;
    std::string checkpoint_path;
    Ensemble ensemble = Ensemble::brick_wall;
    /// Worker threads; 0 means all hardware threads.
    unsigned threads = 0;
    /// Keep every per-sample value in the result (for spot checks).
    bool retain_samples = false;

    std::size_t depth() const { return depth_rule.resolve(num_qubits); }

    void validate() const {
        if (num_qubits < 2) {
            throw std::invalid_argument("ExperimentConfig: N must be at least 2");
        }
        if (amount < 1 || amount > num_qubits) {
            throw std::invalid_argument("ExperimentConfig: amount must lie in [1, N]");
        }
        if (n_values.empty()) {
            throw std::invalid_argument("ExperimentConfig: n_values is empty");
        }
        for (std::size_t n : n_values) {
            if (n < 1 || n > num_qubits) {
                throw std::invalid_argument("ExperimentConfig: n values must lie in [1, N]");
            }
        }
        if (samples < 1) {
            throw std::invalid_argument("ExperimentConfig: samples must be at least 1");
        }
        if (ensemble == Ensemble::global_clifford && mode != Mode::holevo) {
            throw std::invalid_argument("ExperimentConfig: the global Clifford ensemble supports holevo mode only");
        }
        if (checkpoint_interval > 0 && checkpoint_path.empty()) {
            throw std::invalid_argument("ExperimentConfig: checkpointing needs a checkpoint path");
        }
    }
};

/// Exact integer accumulator of per-sample values.
struct Accumulator {
    std::uint64_t count = 0;
    std::int64_t sum = 0;
    std::int64_t sum_squares = 0;

    void add(long value) {
        ++count;
        sum += value;
        sum_squares += static_cast<std::int64_t>(value) * value;
    }
    void merge(const Accumulator &o) {
        count += o.count;
        sum += o.sum;
        sum_squares += o.sum_squares;
    }
    double mean() const { return count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0; }
    /// Population standard deviation; M^2 var = M sum(x^2) - (sum x)^2 is exact in 128 bits.
    double stddev() const {
        if (count == 0) {
            return 0.0;
        }
        const __int128 m = count;
        const __int128 scaled = m * sum_squares - static_cast<__int128>(sum) * sum;
        return std::sqrt(static_cast<double>(scaled)) / static_cast<double>(count);
    }
    double standard_error() const { return count ? stddev() / std::sqrt(static_cast<double>(count)) : 0.0; }
    bool operator==(const Accumulator &) const = default;
};

struct SweepPoint {
    std::size_t n = 0;
    Accumulator totals;
    double mean = 0;
    double stddev = 0;
    double standard_error = 0;
    std::uint64_t count = 0;
    /// Per-sample values in index order, when retained.
    std::vector<int> values;

    void finalize() {
        mean = totals.mean();
        stddev = totals.stddev();
        standard_error = totals.standard_error();
        count = totals.count;
    }
};

struct SweepResult {
    std::size_t num_qubits = 0;
    std::size_t amount = 0;
    std::size_t depth = 0;
    Mode mode = Mode::holevo;
    Ensemble ensemble = Ensemble::brick_wall;
    std::vector<SweepPoint> points;

    const SweepPoint &at(std::size_t n) const {
        for (const SweepPoint &p : points) {
            if (p.n == n) {
                return p;
            }
        }
        throw std::out_of_range("SweepResult: no point for n = " + std::to_string(n));
    }
};

/// Raised when a checkpoint cannot be written; carries the results so far.
class CheckpointError : public std::runtime_error {
   public:
    CheckpointError(const std::string &what, SweepResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const SweepResult &partial() const { return partial_; }

   private:
    SweepResult partial_;
};

/// Stream for sample `index` of point (n, t) in the configuration.
inline RandomStream sample_stream(const ExperimentConfig &config, std::size_t n, std::size_t depth,
                                  std::uint64_t index) {
    return RandomStream::derive(config.master_seed,
                                {static_cast<std::uint64_t>(config.mode), config.num_qubits, config.amount, n, depth,
                                 index, static_cast<std::uint64_t>(config.ensemble)});
}

/// One (unitary, Q, encoded) draw evaluated at sample `index`.
inline SampleOutcome evaluate_sample(const ExperimentConfig &config, std::size_t n, std::size_t depth,
                                     std::uint64_t index) {
    RandomStream rng = sample_stream(config, n, depth, index);
    const SampleSpec spec = draw_sample_spec(config.num_qubits, config.amount, n, depth, config.mode, rng);
    if (config.ensemble == Ensemble::global_clifford) {
        return holevo_sample(spec, sample_global_clifford(config.num_qubits, rng));
    }
    const BrickWallCircuit circuit = build_brick_wall(config.num_qubits, depth, rng);
    return config.mode == Mode::holevo ? holevo_sample(spec, circuit) : coherent_sample(spec, circuit);
}

namespace detail {

inline unsigned worker_count(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates samples [begin, end) of one point; values land at their index.
inline void evaluate_block(const ExperimentConfig &config, std::size_t n, std::size_t depth, std::uint64_t begin,
                           std::uint64_t end, std::vector<int> &values) {
    values.assign(static_cast<std::size_t>(end - begin), 0);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(worker_count(config.threads), end - begin));
    auto run = [&](unsigned w) {
        for (std::uint64_t i = begin + w; i < end; i += workers) {
            values[static_cast<std::size_t>(i - begin)] = static_cast<int>(evaluate_sample(config, n, depth, i).value);
        }
    };
    if (workers <= 1) {
        run(0);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                run(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

inline nlohmann::json checkpoint_identity(const ExperimentConfig &c, std::size_t depth) {
    return {{"mode", std::string(to_string(c.mode))},
            {"N", c.num_qubits},
            {"amount", c.amount},
            {"t", depth},
            {"samples", c.samples},
            {"seed", c.master_seed},
            {"ensemble", std::string(to_string(c.ensemble))}};
}

inline void write_checkpoint(const ExperimentConfig &c, std::size_t depth, const std::vector<SweepPoint> &points) {
    nlohmann::json doc;
    doc["identity"] = checkpoint_identity(c, depth);
    doc["points"] = nlohmann::json::array();
    for (const SweepPoint &p : points) {
        doc["points"].push_back(
            {{"n", p.n}, {"count", p.totals.count}, {"sum", p.totals.sum}, {"sum_squares", p.totals.sum_squares}});
    }
    const std::filesystem::path target(c.checkpoint_path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << doc.dump(2) << '\n';
        out.flush();
        if (!out) {
            throw std::runtime_error("cannot write checkpoint " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        throw std::runtime_error("cannot move checkpoint into place at " + target.string() + ": " + ec.message());
    }
}

/// Accumulators from a matching checkpoint, keyed by n.
inline std::vector<std::pair<std::size_t, Accumulator>> read_checkpoint(const ExperimentConfig &c, std::size_t depth) {
    std::vector<std::pair<std::size_t, Accumulator>> out;
    if (c.checkpoint_path.empty() || !std::filesystem::exists(c.checkpoint_path)) {
        return out;
    }
    std::ifstream in(c.checkpoint_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error("unreadable checkpoint " + c.checkpoint_path + ": " + e.what());
    }
    if (doc.value("identity", nlohmann::json()) != checkpoint_identity(c, depth)) {
        return out;
    }
    for (const auto &p : doc.at("points")) {
        Accumulator a;
        a.count = p.at("count").get<std::uint64_t>();
        a.sum = p.at("sum").get<std::int64_t>();
        a.sum_squares = p.at("sum_squares").get<std::int64_t>();
        out.emplace_back(p.at("n").get<std::size_t>(), a);
    }
    return out;
}

}  // namespace detail

/// Mean, population deviation and standard error of the per-sample value at
/// every n of the configuration. Resumes from a matching checkpoint file.
/// Retained samples are only available for points computed without resuming.
inline SweepResult run_sweep(const ExperimentConfig &config) {
    config.validate();
    const std::size_t depth = config.depth();
    SweepResult result;
    result.num_qubits = config.num_qubits;
    result.amount = config.amount;
    result.depth = depth;
    result.mode = config.mode;
    result.ensemble = config.ensemble;
    for (std::size_t n : config.n_values) {
        result.points.push_back(SweepPoint{n, {}, 0, 0, 0, 0, {}});
    }
    for (const auto &[n, acc] : detail::read_checkpoint(config, depth)) {
        for (SweepPoint &p : result.points) {
            if (p.n == n && acc.count <= config.samples) {
                p.totals = acc;
            }
        }
    }
    const std::uint64_t block = config.checkpoint_interval > 0 ? config.checkpoint_interval : config.samples;
    std::vector<int> values;
    for (SweepPoint &point : result.points) {
        while (point.totals.count < config.samples) {
            const std::uint64_t begin = point.totals.count;
            const std::uint64_t end = std::min(config.samples, begin + block);
            detail::evaluate_block(config, point.n, depth, begin, end, values);
            for (int v : values) {
                point.totals.add(v);
            }
            if (config.retain_samples && point.values.size() == begin) {
                point.values.insert(point.values.end(), values.begin(), values.end());
            }
            if (config.checkpoint_interval > 0) {
                try {
                    detail::write_checkpoint(config, depth, result.points);
                } catch (const std::exception &e) {
                    for (SweepPoint &p : result.points) {
                        p.finalize();
                    }
                    throw CheckpointError(e.what(), result);
                }
            }
        }
        point.finalize();
    }
    return result;
}

/// Distance of finite-depth curves from the steady-state reference.
struct DynamicsResult {
    std::vector<std::size_t> schedule;
    /// D(t) = sum_n (mean_n^t - mean_n^ref)^2, aligned with `schedule`.
    std::vector<double> distance;
    /// First-order (delta-method) standard error of D(t).
    std::vector<double> distance_stderr;
    std::size_t reference_depth = 0;
    SweepResult reference;
    std::vector<SweepResult> sweeps;

    double at(std::size_t t) const {
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            if (schedule[i] == t) {
                return distance[i];
            }
        }
        throw std::out_of_range("DynamicsResult: depth " + std::to_string(t) + " not in the schedule");
    }
};

/// D(t) for every depth in `schedule`; the reference depth defaults to 3N.
inline DynamicsResult run_dynamics(ExperimentConfig config, const std::vector<std::size_t> &schedule,
                                   std::optional<std::size_t> reference_depth = std::nullopt) {
    config.validate();
    if (schedule.empty()) {
        throw std::invalid_argument("run_dynamics: empty depth schedule");
    }
    const std::size_t ref = reference_depth.value_or(3 * config.num_qubits);
    if (ref < *std::max_element(schedule.begin(), schedule.end())) {
        throw std::invalid_argument("run_dynamics: reference depth must be at least the largest scheduled depth");
    }
    DynamicsResult out;
    out.schedule = schedule;
    out.reference_depth = ref;
    config.checkpoint_interval = 0;
    config.depth_rule = DepthRule::layers(ref);
    out.reference = run_sweep(config);
    for (std::size_t t : schedule) {
        config.depth_rule = DepthRule::layers(t);
        SweepResult sweep = t == ref ? out.reference : run_sweep(config);
        double d = 0, var = 0;
        for (std::size_t i = 0; i < sweep.points.size(); ++i) {
            const SweepPoint &p = sweep.points[i];
            const SweepPoint &r = out.reference.points[i];
            const double diff = p.mean - r.mean;
            d += diff * diff;
            if (t != ref) {
                var += 4 * diff * diff *
                       (p.standard_error * p.standard_error + r.standard_error * r.standard_error);
            }
        }
        out.distance.push_back(d);
        out.distance_stderr.push_back(std::sqrt(var));
        out.sweeps.push_back(std::move(sweep));
    }
    return out;
}

/// Raised when D(t) is not positive inside a decay-rate window.
class DegenerateDistanceError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

struct DecayRate {
    double rate = 0;
    double lower = 0;
    double upper = 0;
};

/// Average slope of ln D(t) between t and t_prime, plus the smallest and
/// largest per-step decay slopes -(ln D_{i+1} - ln D_i) / (t_{i+1} - t_i)
/// between consecutive scheduled depths inside the window.
inline DecayRate decay_rate(const DynamicsResult &dyn, std::size_t t, std::size_t t_prime) {
    if (t == t_prime) {
        throw std::invalid_argument("decay_rate: t and t' must differ");
    }
    const std::size_t lo = std::min(t, t_prime), hi = std::max(t, t_prime);
    const double d_lo = dyn.at(lo), d_hi = dyn.at(hi);
    std::vector<std::pair<std::size_t, double>> window;
    for (std::size_t i = 0; i < dyn.schedule.size(); ++i) {
        if (dyn.schedule[i] >= lo && dyn.schedule[i] <= hi) {
            window.emplace_back(dyn.schedule[i], dyn.distance[i]);
        }
    }
    std::sort(window.begin(), window.end());
    for (const auto &[depth, d] : window) {
        if (!(d > 0)) {
            throw DegenerateDistanceError("decay_rate: D(" + std::to_string(depth) + ") is not positive");
        }
    }
    DecayRate out;
    out.rate = std::fabs(std::log(d_lo) - std::log(d_hi)) / static_cast<double>(hi - lo);
    out.lower = std::numeric_limits<double>::infinity();
    out.upper = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < window.size(); ++i) {
        const double slope = -(std::log(window[i + 1].second) - std::log(window[i].second)) /
                             static_cast<double>(window[i + 1].first - window[i].first);
        out.lower = std::min(out.lower, slope);
        out.upper = std::max(out.upper, slope);
    }
    return out;
}

/// Least-squares line y = slope x + intercept with its coefficient of determination.
struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

inline LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("fit_line: need at least two (x, y) pairs");
    }
    const double m = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0) {
        throw std::invalid_argument("fit_line: x values are all equal");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

/// One member of a finite-size family: n_below below the first transition
/// and n_above beyond the second.
struct ScalingSpec {
    std::size_t num_qubits = 0;
    std::size_t amount = 0;
    std::size_t n_below = 0;
    std::size_t n_above = 0;
};

struct ScalingPoint {
    ScalingSpec spec;
    double delta1 = 0;  // mean chi at n_below
    double delta1_stderr = 0;
    double delta2 = 0;  // H - mean chi at n_above
    double delta2_stderr = 0;
    std::optional<double> exact_delta1;
    std::optional<double> exact_delta2;
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
};

/// Largest N for which the exact deviations are attached to scaling points.
inline constexpr std::size_t kScalingExactLimit = 400;

/// Monte Carlo deviations from the two plateaus for each family member;
/// `base` supplies samples, seed, depth rule, ensemble and threads.
inline ScalingResult finite_size_scaling(const std::vector<ScalingSpec> &family, const ExperimentConfig &base) {
    ScalingResult out;
    for (const ScalingSpec &s : family) {
        const double N = static_cast<double>(s.num_qubits);
        if (!(2.0 * static_cast<double>(s.n_below) < N) ||
            !(2.0 * static_cast<double>(s.n_above) > N + static_cast<double>(s.amount))) {
            throw std::invalid_argument("finite_size_scaling: need n_below < N/2 and n_above > (N + H)/2");
        }
        ExperimentConfig c = base;
        c.mode = Mode::holevo;
        c.num_qubits = s.num_qubits;
        c.amount = s.amount;
        c.n_values = {s.n_below, s.n_above};
        c.checkpoint_interval = 0;
        const SweepResult sweep = run_sweep(c);
        ScalingPoint p;
        p.spec = s;
        p.delta1 = sweep.points[0].mean;
        p.delta1_stderr = sweep.points[0].standard_error;
        p.delta2 = static_cast<double>(s.amount) - sweep.points[1].mean;
        p.delta2_stderr = sweep.points[1].standard_error;
        if (s.num_qubits <= kScalingExactLimit) {
            const int N_i = static_cast<int>(s.num_qubits), H_i = static_cast<int>(s.amount);
            p.exact_delta1 = static_cast<double>(exact::holevo_exact(static_cast<int>(s.n_below), N_i, H_i).chi);
            p.exact_delta2 = static_cast<double>(exact::holevo_exact(static_cast<int>(s.n_above), N_i, H_i).deficit);
        }
        out.points.push_back(p);
    }
    return out;
}

}  // namespace scramble
