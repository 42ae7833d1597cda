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

// Command-line front end: sweep, dynamics, exact, validate and circuit.
//
// Exit codes: 0 ok, 1 validation failure, 2 configuration error, 3 I/O
// error, 4 non-positive distance inside a decay-rate window.

#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scramble/circuit.hpp"
#include "scramble/exact_orbit.hpp"
#include "scramble/harness.hpp"
#include "validation.hpp"

#ifndef SCRAMBLE_VERSION
#define SCRAMBLE_VERSION "0.0.0"
#endif

namespace scramble::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kIoError = 3, kDegenerate = 4 };

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Shortest text that round-trips a double.
inline std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

/// Parses "1..19", "2..18:4", "1,3,5" or a mix such as "1..4,9".
inline std::vector<std::size_t> parse_index_list(const std::string &text, const std::string &flag) {
    auto fail = [&] { return ConfigError("--" + flag + ": cannot parse '" + text + "'"); };
    auto number = [&](const std::string &s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw fail();
        }
        return static_cast<std::size_t>(std::stoull(s));
    };
    std::vector<std::size_t> out;
    std::stringstream parts(text);
    std::string part;
    while (std::getline(parts, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(part));
            continue;
        }
        std::string tail = part.substr(dots + 2);
        std::size_t step = 1;
        if (const auto colon = tail.find(':'); colon != std::string::npos) {
            step = number(tail.substr(colon + 1));
            tail = tail.substr(0, colon);
        }
        const std::size_t lo = number(part.substr(0, dots)), hi = number(tail);
        if (step == 0 || hi < lo) {
            throw fail();
        }
        for (std::size_t v = lo; v <= hi; v += step) {
            out.push_back(v);
        }
    }
    if (out.empty()) {
        throw fail();
    }
    return out;
}

inline std::pair<double, double> parse_pair(const std::string &text, const std::string &flag) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            throw std::invalid_argument(text);
        }
        std::size_t used_a = 0, used_b = 0;
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const double x = std::stod(a, &used_a), y = std::stod(b, &used_b);
        if (used_a != a.size() || used_b != b.size()) {
            throw std::invalid_argument(text);
        }
        return {x, y};
    } catch (const std::exception &) {
        throw ConfigError("--" + flag + ": expected two comma-separated numbers, got '" + text + "'");
    }
}

inline std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

/// Writes `content` to `path` through a temporary file and a rename, or to
/// `out` when the path is "-".
inline void write_output(const std::string &path, const std::string &content, std::ostream &out) {
    if (path == "-") {
        out << content;
        return;
    }
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = path + ".tmp";
    {
        std::ofstream file(tmp, std::ios::trunc | std::ios::binary);
        file << content;
        file.flush();
        if (!file) {
            throw IoError("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot write " + path);
    }
}

/// Run metadata; the seed and configuration are captured before any sampling.
struct RunManifest {
    nlohmann::json doc;
    std::chrono::steady_clock::time_point started;

    RunManifest(const std::string &command, std::uint64_t seed, nlohmann::json config) {
        started = std::chrono::steady_clock::now();
        doc["tool"] = "scramble";
        doc["version"] = SCRAMBLE_VERSION;
        doc["command"] = command;
        doc["master_seed"] = seed;
        doc["config"] = std::move(config);
        doc["started_at"] = timestamp_now();
        doc["outputs"] = nlohmann::json::array();
    }

    void add_output(const std::string &path, const std::string &schema) {
        if (path != "-") {
            doc["outputs"].push_back({{"path", path}, {"columns", schema}});
        }
    }

    /// Stamps the end time and writes next to the first output file, unless
    /// every output went to stdout and no explicit path was given.
    void finish(const std::string &explicit_path, std::ostream &out) {
        if (explicit_path.empty() && doc["outputs"].empty()) {
            return;
        }
        doc["finished_at"] = timestamp_now();
        doc["wall_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        const std::string path =
            explicit_path.empty() ? doc["outputs"][0]["path"].get<std::string>() + ".manifest.json" : explicit_path;
        write_output(path, doc.dump(2) + "\n", out);
    }
};

inline constexpr const char *kSweepColumns = "mode,N,amount,t,n,samples,mean_bits,std_bits,stderr_bits";
inline constexpr const char *kDynamicsColumns = "N,amount,t,distance";
inline constexpr const char *kDecayColumns = "N,amount,t,t_prime,rate,lower,upper";
inline constexpr const char *kExactColumns = "N,H,n,chi_exact_bits,es_nH_bits,es_n0_bits";

struct SweepOptions {
    std::string mode = "holevo";
    std::size_t N = 0;
    std::size_t amount = 0;
    std::size_t t = 0;
    std::size_t t_mult = 3;
    std::string n = "";
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string manifest;
    std::string ensemble = "brick_wall";
    unsigned threads = 0;
    std::string checkpoint;
    std::uint64_t checkpoint_interval = 0;
};

struct DynamicsOptions {
    std::size_t N = 0;
    std::string amount_range;
    std::string t_schedule;
    std::size_t ref_mult = 3;
    std::string window = "7,12";
    std::string n;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string decay_out;
    std::string manifest;
    unsigned threads = 0;
};

struct ExactOptions {
    int N = 0;
    int H = 0;
    std::string n;
    std::string thermo;
    bool verify_argmax = false;
    bool verify_kkt = false;
    std::string out = "-";
    std::string manifest;
};

struct CircuitOptions {
    std::size_t N = 0;
    std::size_t t = 0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

inline void check_range(bool ok, const std::string &flag, const std::string &what) {
    if (!ok) {
        throw ConfigError("--" + flag + " " + what);
    }
}

inline std::vector<std::size_t> retrieval_sizes(const std::string &text, std::size_t N) {
    if (text.empty()) {
        return parse_index_list("1.." + std::to_string(N), "n");
    }
    auto ns = parse_index_list(text, "n");
    for (std::size_t n : ns) {
        check_range(n >= 1 && n <= N, "n", "values must lie in [1, N]");
    }
    return ns;
}

inline int cmd_sweep(const SweepOptions &o, std::ostream &out, std::ostream &err) {
    ExperimentConfig c;
    try {
        c.mode = parse_mode(o.mode);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("--mode: ") + e.what());
    }
    check_range(o.N >= 2, "N", "must be at least 2");
    check_range(o.amount >= 1 && o.amount <= o.N, "amount", "must lie in [1, N]");
    check_range(o.samples >= 1, "samples", "must be at least 1");
    check_range(o.ensemble == "brick_wall" || o.ensemble == "global_clifford", "ensemble",
                "must be brick_wall or global_clifford");
    c.num_qubits = o.N;
    c.amount = o.amount;
    c.depth_rule = o.t > 0 ? DepthRule::layers(o.t) : DepthRule::multiple_of_n(o.t_mult);
    c.n_values = retrieval_sizes(o.n, o.N);
    c.samples = o.samples;
    c.master_seed = o.seed;
    c.threads = o.threads;
    c.ensemble = o.ensemble == "brick_wall" ? Ensemble::brick_wall : Ensemble::global_clifford;
    check_range(c.ensemble == Ensemble::brick_wall || c.mode == Mode::holevo, "ensemble",
                "global_clifford supports holevo mode only");
    c.checkpoint_path = o.checkpoint;
    c.checkpoint_interval = o.checkpoint_interval;
    check_range(c.checkpoint_interval == 0 || !c.checkpoint_path.empty(), "checkpoint",
                "is required with --checkpoint-interval");

    RunManifest manifest("sweep", o.seed,
                         {{"mode", o.mode},
                          {"N", o.N},
                          {"amount", o.amount},
                          {"t", c.depth()},
                          {"n", c.n_values},
                          {"samples", o.samples},
                          {"ensemble", o.ensemble},
                          {"threads", o.threads}});
    SweepResult result;
    try {
        result = run_sweep(c);
    } catch (const CheckpointError &e) {
        throw IoError(std::string("checkpoint failed (partial results kept in memory only): ") + e.what());
    } catch (const std::runtime_error &e) {
        throw IoError(e.what());
    }
    std::ostringstream csv;
    csv << kSweepColumns << '\n';
    for (const SweepPoint &p : result.points) {
        csv << to_string(c.mode) << ',' << o.N << ',' << o.amount << ',' << result.depth << ',' << p.n << ','
            << p.count << ',' << format_number(p.mean) << ',' << format_number(p.stddev) << ','
            << format_number(p.standard_error) << '\n';
    }
    write_output(o.out, csv.str(), out);
    manifest.add_output(o.out, kSweepColumns);
    manifest.finish(o.manifest, out);
    err << "sweep: " << result.points.size() << " points, t=" << result.depth << ", " << o.samples
        << " samples each\n";
    return kOk;
}

inline int cmd_dynamics(const DynamicsOptions &o, std::ostream &out, std::ostream &err) {
    check_range(o.N >= 2, "N", "must be at least 2");
    const auto amounts = parse_index_list(o.amount_range, "amount-range");
    for (std::size_t h : amounts) {
        check_range(h >= 1 && h <= o.N, "amount-range", "values must lie in [1, N]");
    }
    const std::size_t ref = o.ref_mult * o.N;
    const auto schedule = parse_index_list(o.t_schedule.empty() ? "0.." + std::to_string(ref) : o.t_schedule,
                                           "t-schedule");
    for (std::size_t t : schedule) {
        check_range(t <= ref, "t-schedule", "depths must not exceed the reference depth (--ref-mult times N)");
    }
    const auto [w0, w1] = parse_pair(o.window, "window");
    const auto t0 = static_cast<std::size_t>(w0), t1 = static_cast<std::size_t>(w1);
    check_range(w0 >= 0 && w1 >= 0 && w0 == static_cast<double>(t0) && w1 == static_cast<double>(t1) && t0 != t1,
                "window", "must be two distinct layer counts");
    auto in_schedule = [&](std::size_t t) { return std::find(schedule.begin(), schedule.end(), t) != schedule.end(); };
    check_range(in_schedule(t0) && in_schedule(t1), "window", "depths must appear in --t-schedule");
    check_range(o.samples >= 1, "samples", "must be at least 1");

    ExperimentConfig c;
    c.num_qubits = o.N;
    c.mode = Mode::holevo;
    c.n_values = retrieval_sizes(o.n, o.N);
    c.samples = o.samples;
    c.master_seed = o.seed;
    c.threads = o.threads;

    RunManifest manifest("dynamics", o.seed,
                         {{"N", o.N},
                          {"amount_range", amounts},
                          {"t_schedule", schedule},
                          {"reference_depth", ref},
                          {"n", c.n_values},
                          {"samples", o.samples},
                          {"threads", o.threads}});
    manifest.doc["window"] = {t0, t1};
    manifest.doc["log_base"] = "e";

    std::ostringstream dyn_csv, decay_csv;
    dyn_csv << kDynamicsColumns << '\n';
    decay_csv << kDecayColumns << '\n';
    std::string degenerate;
    for (std::size_t h : amounts) {
        c.amount = h;
        const DynamicsResult d = run_dynamics(c, schedule, ref);
        for (std::size_t i = 0; i < schedule.size(); ++i) {
            dyn_csv << o.N << ',' << h << ',' << schedule[i] << ',' << format_number(d.distance[i]) << '\n';
        }
        try {
            const DecayRate k = decay_rate(d, t0, t1);
            decay_csv << o.N << ',' << h << ',' << t0 << ',' << t1 << ',' << format_number(k.rate) << ','
                      << format_number(k.lower) << ',' << format_number(k.upper) << '\n';
        } catch (const DegenerateDistanceError &e) {
            if (degenerate.empty()) {
                degenerate = "amount " + std::to_string(h) + ": " + e.what();
            }
        }
    }
    write_output(o.out, dyn_csv.str(), out);
    manifest.add_output(o.out, kDynamicsColumns);
    std::string decay_path = o.decay_out;
    if (decay_path.empty()) {
        decay_path = o.out == "-" ? "-" : std::filesystem::path(o.out).replace_extension("").string() + "_decay.csv";
    }
    write_output(decay_path, decay_csv.str(), out);
    manifest.add_output(decay_path, kDecayColumns);
    manifest.finish(o.manifest, out);
    if (!degenerate.empty()) {
        err << "dynamics: distance reached zero inside the window (" << degenerate << ")\n";
        return kDegenerate;
    }
    err << "dynamics: " << amounts.size() << " amounts x " << schedule.size() << " depths\n";
    return kOk;
}

inline int cmd_exact(const ExactOptions &o, std::ostream &out, std::ostream &err) {
    int status = kOk;
    if (!o.thermo.empty()) {
        const auto [rn, rh] = parse_pair(o.thermo, "thermo");
        double value = 0;
        try {
            value = exact::thermo_limit(rn, rh);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("--thermo: ") + e.what());
        }
        out << format_number(value) << '\n';
        if (o.N == 0 && o.H == 0) {
            return kOk;
        }
    }
    check_range(o.N >= 1, "N", "must be at least 1");
    check_range(o.H >= 1 && o.H <= o.N, "H", "must lie in [1, N]");
    const auto ns = retrieval_sizes(o.n, static_cast<std::size_t>(o.N));

    if (o.verify_argmax) {
        bool all = true;
        err << "n  closed_form  brute_force  result\n";
        for (std::size_t n : ns) {
            const auto closed = exact::argmax_orbit_weight(static_cast<int>(n), o.N, o.H);
            const auto brute = exact::brute_force_argmax(static_cast<int>(n), o.N, o.H);
            const bool ok = closed.same_partition(brute);
            all = all && ok;
            err << n << "  " << closed.str() << "  " << brute.str() << "  " << (ok ? "pass" : "fail") << '\n';
        }
        out << "verify-argmax: " << (all ? "pass" : "fail") << '\n';
        status = all ? status : kValidationFailed;
    }
    if (o.verify_kkt) {
        bool any_violated = false;
        err << "n  regime  mu  verdict\n";
        for (std::size_t n : ns) {
            const auto r = exact::verify_kkt(static_cast<int>(n), o.N, o.H);
            err << n << "  " << r.regime << "  (" << format_number(r.multipliers[0]) << ", "
                << format_number(r.multipliers[1]) << ", " << format_number(r.multipliers[2]) << ")  "
                << exact::to_string(r.verdict) << '\n';
            any_violated = any_violated || r.verdict == exact::KktVerdict::violated;
        }
        err << "hessian negative definite: " << (exact::continuum_hessian_negative_definite() ? "yes" : "no") << '\n';
        out << "verify-kkt: " << (any_violated ? "fail" : "pass") << '\n';
        status = any_violated ? kValidationFailed : status;
    }
    if (o.verify_argmax || o.verify_kkt) {
        return status;
    }

    RunManifest manifest("exact", 0, {{"N", o.N}, {"H", o.H}, {"n", ns}});
    std::ostringstream csv;
    csv << kExactColumns << '\n';
    for (std::size_t n : ns) {
        const auto r = exact::holevo_exact(static_cast<int>(n), o.N, o.H);
        csv << o.N << ',' << o.H << ',' << n << ',' << format_number(static_cast<double>(r.chi)) << ','
            << format_number(static_cast<double>(r.es_n_amount)) << ','
            << format_number(static_cast<double>(r.es_n0)) << '\n';
    }
    write_output(o.out, csv.str(), out);
    manifest.add_output(o.out, kExactColumns);
    manifest.finish(o.manifest, out);
    return status;
}

inline int cmd_circuit(const CircuitOptions &o, std::ostream &out) {
    check_range(o.N >= 2, "N", "must be at least 2");
    RandomStream rng = RandomStream::derive(o.seed, {o.N, o.t});
    std::ostringstream text;
    build_brick_wall(o.N, o.t, rng).dump(text);
    write_output(o.out, text.str(), out);
    return kOk;
}

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// Replaces `--config PATH` with the file's `key = value` lines, rendered as
/// flags. Keys already given on the command line are skipped, so flags win.
/// Lines starting with # and blank lines are ignored; `key = true` turns on a
/// boolean flag.
inline std::vector<std::string> merge_config_file(std::vector<std::string> args) {
    std::string path;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 == args.size()) {
                throw ConfigError("--config needs a file path");
            }
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            kept.push_back(args[i]);
        }
    }
    if (path.empty()) {
        return kept;
    }
    std::ifstream file(path);
    if (!file) {
        throw IoError("--config: cannot read " + path);
    }
    auto given = [&](const std::string &flag) {
        return std::any_of(kept.begin(), kept.end(),
                           [&](const std::string &a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };
    std::string line;
    int line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--config: " + path + ":" + std::to_string(line_number) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        if (given(flag)) {
            continue;
        }
        if (value == "true") {
            kept.push_back(flag);
        } else if (value != "false") {
            kept.push_back(flag);
            kept.push_back(value);
        }
    }
    return kept;
}

/// Parses arguments and dispatches; never throws.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Holevo and coherent information of random Clifford circuits", "scramble"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SCRAMBLE_VERSION);

    SweepOptions sw;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep over retrieval sizes n");
    sweep->add_option("--config", "key = value file; flags take precedence");
    sweep->add_option("--mode", sw.mode, "holevo or coherent")->capture_default_str();
    sweep->add_option("--N", sw.N, "number of system qubits")->required();
    sweep->add_option("--amount", sw.amount, "encoded bits H or logical qubits C")->required();
    auto *t_opt = sweep->add_option("--t", sw.t, "explicit circuit depth");
    sweep->add_option("--t-mult", sw.t_mult, "depth as a multiple of N")->capture_default_str()->excludes(t_opt);
    sweep->add_option("--n", sw.n, "retrieval sizes, e.g. 1..19 or 2,4,6 (default 1..N)");
    sweep->add_option("--samples", sw.samples, "samples per point")->capture_default_str();
    sweep->add_option("--seed", sw.seed, "master seed")->capture_default_str();
    sweep->add_option("--out", sw.out, "CSV path, - for stdout")->capture_default_str();
    sweep->add_option("--manifest", sw.manifest, "manifest path (default <out>.manifest.json)");
    sweep->add_option("--ensemble", sw.ensemble, "brick_wall or global_clifford")->capture_default_str();
    sweep->add_option("--threads", sw.threads, "worker threads, 0 for all cores")->capture_default_str();
    sweep->add_option("--checkpoint", sw.checkpoint, "checkpoint file");
    sweep->add_option("--checkpoint-interval", sw.checkpoint_interval, "samples between checkpoints");

    DynamicsOptions dy;
    auto *dynamics = app.add_subcommand("dynamics", "distance to the steady state and decay rates");
    dynamics->add_option("--config", "key = value file; flags take precedence");
    dynamics->add_option("--N", dy.N, "number of system qubits")->required();
    dynamics->add_option("--amount-range", dy.amount_range, "encoded amounts, e.g. 2..18:4")->required();
    dynamics->add_option("--t-schedule", dy.t_schedule, "depths, e.g. 0..40 (default 0..ref)");
    dynamics->add_option("--ref-mult", dy.ref_mult, "reference depth as a multiple of N")->capture_default_str();
    dynamics->add_option("--window", dy.window, "decay-rate window t,t'")->capture_default_str();
    dynamics->add_option("--n", dy.n, "retrieval sizes (default 1..N)");
    dynamics->add_option("--samples", dy.samples, "samples per point")->capture_default_str();
    dynamics->add_option("--seed", dy.seed, "master seed")->capture_default_str();
    dynamics->add_option("--out", dy.out, "distance CSV path, - for stdout")->capture_default_str();
    dynamics->add_option("--decay-out", dy.decay_out, "decay-rate CSV path (default <out>_decay.csv)");
    dynamics->add_option("--manifest", dy.manifest, "manifest path");
    dynamics->add_option("--threads", dy.threads, "worker threads, 0 for all cores")->capture_default_str();

    ExactOptions ex;
    auto *exact_cmd = app.add_subcommand("exact", "exact Clifford-orbit averages");
    exact_cmd->add_option("--config", "key = value file; flags take precedence");
    exact_cmd->add_option("--N", ex.N, "number of qubits");
    exact_cmd->add_option("--H", ex.H, "encoded classical bits");
    exact_cmd->add_option("--n", ex.n, "retrieval sizes (default 1..N)");
    exact_cmd->add_option("--thermo", ex.thermo, "print the thermodynamic limit at r_n,r_H");
    exact_cmd->add_flag("--verify-argmax", ex.verify_argmax, "compare the closed-form maximizer with brute force");
    exact_cmd->add_flag("--verify-kkt", ex.verify_kkt, "evaluate the KKT multipliers");
    exact_cmd->add_option("--out", ex.out, "CSV path, - for stdout")->capture_default_str();
    exact_cmd->add_option("--manifest", ex.manifest, "manifest path");

    ValidateOptions va;
    auto *validate = app.add_subcommand("validate", "run the property and oracle suite");
    validate->add_flag("--quick", va.quick, "reduced sample counts");
    validate->add_option("--threads", va.threads, "worker threads, 0 for all cores");
    validate->add_option("--inject-fault", va.fault, "test fixture")->group("");

    CircuitOptions ci;
    auto *circuit = app.add_subcommand("circuit", "dump a random brick-wall circuit");
    circuit->add_option("--N", ci.N, "number of qubits")->required();
    circuit->add_option("--t", ci.t, "depth")->required();
    circuit->add_option("--seed", ci.seed, "seed")->capture_default_str();
    circuit->add_option("--out", ci.out, "output path, - for stdout")->capture_default_str();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config_file(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    try {
        if (*sweep) {
            return cmd_sweep(sw, out, err);
        }
        if (*dynamics) {
            return cmd_dynamics(dy, out, err);
        }
        if (*exact_cmd) {
            return cmd_exact(ex, out, err);
        }
        if (*validate) {
            return run_validation(va, out) ? kOk : kValidationFailed;
        }
        return cmd_circuit(ci, out);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument &e) {
        err << "error: invalid configuration: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace scramble::cli
