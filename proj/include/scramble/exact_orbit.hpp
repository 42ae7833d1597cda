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

// Exact average subsystem entropy of Clifford-random stabilizer states.
//
// A state rho_h (N qubits, h of them maximally mixed) evolved by a uniformly
// random N-qubit Clifford is uniform on its orbit. Splitting the system into
// Q (n qubits) and its complement (m = N - n), every orbit element is
// equivalent under local Cliffords Cl(n) x Cl(m) to a canonical form with
//   k1 Bell-like pairs across the cut (two generators each),
//   k2 generators of the form Z(Q) Z(Q^c),
//   l1 generators local to Q and l2 local to Q^c,
// subject to 2 k1 + k2 + l1 + l2 = N - h, k1 + k2 + l1 <= n and
// k1 + k2 + l2 <= m. The entropy of Q is n - l1, and each canonical class
// contains |Cl(n)| |Cl(m)| / |Stab| states.

#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace scramble::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest N for which the exact-integer path is used by default.
inline constexpr int kExactIntegerLimit = 30;

/// |Cl(N)| = prod_{j=1}^N 2 (4^j - 1) 4^j, with |Cl(0)| = 1.
inline BigInt clifford_group_order(int num_qubits) {
    if (num_qubits < 0) {
        throw std::invalid_argument("clifford_group_order: N must be non-negative");
    }
    BigInt order = 1;
    for (int j = 1; j <= num_qubits; ++j) {
        BigInt four_j = BigInt(1) << (2 * j);
        order *= 2 * (four_j - 1) * four_j;
    }
    return order;
}

/// Number x = integer + fraction with the integer part kept exactly, used for
/// base-2 logarithms of huge integers. `fraction` stays small in magnitude.
struct Log2Value {
    std::int64_t integer = 0;
    long double fraction = 0;

    long double value() const { return static_cast<long double>(integer) + fraction; }

    Log2Value &operator+=(const Log2Value &o) {
        integer += o.integer;
        fraction += o.fraction;
        return *this;
    }
    Log2Value &operator-=(const Log2Value &o) {
        integer -= o.integer;
        fraction -= o.fraction;
        return *this;
    }
    friend Log2Value operator+(Log2Value a, const Log2Value &b) { return a += b; }
    friend Log2Value operator-(Log2Value a, const Log2Value &b) { return a -= b; }
};

namespace detail {

/// sum_{j=1}^k log2(1 - 2^{-step j}) for step in {1, 2}, cached.
inline long double log2_deficit_sum(int k, int step) {
    static thread_local std::vector<long double> cache[3];
    std::vector<long double> &table = cache[step];
    if (table.empty()) {
        table.push_back(0.0L);
    }
    while (static_cast<int>(table.size()) <= k) {
        const int j = static_cast<int>(table.size());
        table.push_back(table.back() + std::log1p(-std::ldexp(1.0L, -step * j)) / std::log(2.0L));
    }
    return table[static_cast<std::size_t>(k)];
}

/// log2 |Cl(k)|.
inline Log2Value clifford_log2(int k) {
    return Log2Value{static_cast<std::int64_t>(k) + 2 * static_cast<std::int64_t>(k) * (k + 1),
                     log2_deficit_sum(k, 2)};
}

/// log2 |GL(k, 2)| = log2 prod_{j=0}^{k-1} (2^k - 2^j).
inline Log2Value general_linear_log2(int k) {
    return Log2Value{static_cast<std::int64_t>(k) * k, log2_deficit_sum(k, 1)};
}

inline BigInt general_linear_order(int k) {
    BigInt order = 1;
    for (int j = 0; j < k; ++j) {
        order *= (BigInt(1) << k) - (BigInt(1) << j);
    }
    return order;
}

inline void check_sizes(int n, int num_qubits, int h) {
    if (num_qubits < 1 || n < 1 || n > num_qubits) {
        throw std::invalid_argument("exact_orbit: need 1 <= n <= N");
    }
    if (h < 0 || h > num_qubits) {
        throw std::invalid_argument("exact_orbit: need 0 <= h <= N");
    }
}

}  // namespace detail

/// One canonical class (k1, k2, l1, l2) of states with respect to the cut Q | Q^c.
struct OrbitTerm {
    int k1 = 0;
    int k2 = 0;
    int l1 = 0;
    int l2 = 0;
    /// log2 of the class size |Cl(n)| |Cl(m)| / |Stab|.
    Log2Value log2_weight;
    /// Exact class size, when requested.
    std::optional<BigInt> exact_weight;

    /// Remaining free qubits on each side of the cut.
    int h1(int n) const { return n - k1 - k2 - l1; }
    int h2(int m) const { return m - k1 - k2 - l2; }
    /// Entropy of Q for states in this class.
    int entropy(int n) const { return n - l1; }

    bool satisfies(int n, int num_qubits, int h) const {
        const int m = num_qubits - n;
        return k1 >= 0 && k2 >= 0 && l1 >= 0 && l2 >= 0 && 2 * k1 + k2 + l1 + l2 == num_qubits - h &&
               h1(n) >= 0 && h2(m) >= 0;
    }

    auto key() const { return std::make_tuple(k1, k2, l1, l2); }
    bool same_partition(const OrbitTerm &other) const { return key() == other.key(); }

    std::string str() const {
        return "(" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(l1) + "," +
               std::to_string(l2) + ")";
    }
};

namespace detail {

/// Exponent of the power-of-two factors of |Stab|.
inline std::int64_t stabilizer_power_of_two(const OrbitTerm &t, int h1, int h2) {
    const std::int64_t k1 = t.k1, k2 = t.k2, l1 = t.l1, l2 = t.l2;
    std::int64_t e = 2 * k1 * (k2 + l1) + 2 * k1 * l2;
    e += k2 + 2 * k2 + k2 * (k2 + 2 * l1 + 1) / 2 + k2 * (k2 + 2 * l2 + 1) / 2 + 2 * h1 * k2 + 2 * h2 * k2 +
         l1 * k2 + l2 * k2;
    e += l1 + l1 * (l1 + 1) / 2 + 2 * h1 * l1;
    e += l2 + l2 * (l2 + 1) / 2 + 2 * h2 * l2;
    return e;
}

inline void check_term(const OrbitTerm &t, int n, int m, int h) {
    if (n < 0 || m < 0 || !t.satisfies(n, n + m, h)) {
        throw std::invalid_argument("stabilizer_subgroup_order: term " + t.str() + " violates its constraints");
    }
}

}  // namespace detail

/// |Stab| of the canonical state under Cl(n) x Cl(m): the product
///   |Cl(k1)| 2^{2k1(k2+l1)} 2^{2k1 l2}
///   x 2^{k2} 2^{2k2} 2^{k2(k2+2l1+1)/2} 2^{k2(k2+2l2+1)/2} 4^{h1 k2} 4^{h2 k2} |GL(k2)| 2^{l1 k2} 2^{l2 k2}
///   x 2^{l1 + l1(l1+1)/2} |GL(l1)| 4^{h1 l1}
///   x 2^{l2 + l2(l2+1)/2} |GL(l2)| 4^{h2 l2}
///   x |Cl(h1)| |Cl(h2)|.
inline BigInt stabilizer_subgroup_order(const OrbitTerm &t, int n, int m, int h) {
    detail::check_term(t, n, m, h);
    const int h1 = t.h1(n), h2 = t.h2(m);
    BigInt order = BigInt(1) << static_cast<unsigned>(detail::stabilizer_power_of_two(t, h1, h2));
    order *= clifford_group_order(t.k1);
    order *= detail::general_linear_order(t.k2);
    order *= detail::general_linear_order(t.l1);
    order *= detail::general_linear_order(t.l2);
    order *= clifford_group_order(h1);
    order *= clifford_group_order(h2);
    return order;
}

/// log2 of stabilizer_subgroup_order, as an exact sum of log2 of integer factors.
inline Log2Value stabilizer_subgroup_log2(const OrbitTerm &t, int n, int m, int h) {
    detail::check_term(t, n, m, h);
    const int h1 = t.h1(n), h2 = t.h2(m);
    Log2Value v{detail::stabilizer_power_of_two(t, h1, h2), 0};
    v += detail::clifford_log2(t.k1);
    v += detail::general_linear_log2(t.k2);
    v += detail::general_linear_log2(t.l1);
    v += detail::general_linear_log2(t.l2);
    v += detail::clifford_log2(h1);
    v += detail::clifford_log2(h2);
    return v;
}

/// All canonical classes for (n, N, h), each with its log2 class size (and
/// the exact size when `with_exact_weights`). Ordered lexicographically.
inline std::vector<OrbitTerm> enumerate_orbit_terms(int n, int num_qubits, int h, bool with_exact_weights = false) {
    detail::check_sizes(n, num_qubits, h);
    const int m = num_qubits - n;
    const int g = num_qubits - h;
    const Log2Value group_log2 = detail::clifford_log2(n) + detail::clifford_log2(m);
    std::optional<BigInt> group_order;
    if (with_exact_weights) {
        group_order = clifford_group_order(n) * clifford_group_order(m);
    }
    std::vector<OrbitTerm> terms;
    for (int k1 = 0; 2 * k1 <= g && k1 <= std::min(n, m); ++k1) {
        for (int k2 = 0; 2 * k1 + k2 <= g && k1 + k2 <= std::min(n, m); ++k2) {
            for (int l1 = 0; 2 * k1 + k2 + l1 <= g && k1 + k2 + l1 <= n; ++l1) {
                const int l2 = g - 2 * k1 - k2 - l1;
                if (k1 + k2 + l2 > m) {
                    continue;
                }
                OrbitTerm t{k1, k2, l1, l2, {}, std::nullopt};
                t.log2_weight = group_log2 - stabilizer_subgroup_log2(t, n, m, h);
                if (group_order) {
                    const BigInt stab = stabilizer_subgroup_order(t, n, m, h);
                    if (*group_order % stab != 0) {
                        throw std::logic_error("enumerate_orbit_terms: |Stab| does not divide |G| for " + t.str());
                    }
                    t.exact_weight = *group_order / stab;
                }
                terms.push_back(std::move(t));
            }
        }
    }
    return terms;
}

namespace detail {

/// E[S] split as peak + deviation, where peak is the entropy of the heaviest
/// class; keeps tiny differences between two expectations free of cancellation.
struct EntropyExpectation {
    int peak_entropy = 0;
    long double deviation = 0;
    long double mean() const { return static_cast<long double>(peak_entropy) + deviation; }
};

inline EntropyExpectation expected_entropy_split(int n, int num_qubits, int h) {
    const auto terms = enumerate_orbit_terms(n, num_qubits, h);
    const OrbitTerm *heaviest = &terms.front();
    for (const OrbitTerm &t : terms) {
        if ((t.log2_weight - heaviest->log2_weight).value() > 0) {
            heaviest = &t;
        }
    }
    const int peak = heaviest->entropy(n);
    long double total = 0, weighted_deviation = 0;
    for (const OrbitTerm &t : terms) {
        const long double w = std::exp2((t.log2_weight - heaviest->log2_weight).value());
        total += w;
        weighted_deviation += static_cast<long double>(t.entropy(n) - peak) * w;
    }
    return EntropyExpectation{peak, weighted_deviation / total};
}

}  // namespace detail

/// E S_{n,h} in bits: orbit-weighted average of n - l1 (log-domain path).
inline long double expected_entropy_exact(int n, int num_qubits, int h) {
    return detail::expected_entropy_split(n, num_qubits, h).mean();
}

/// E S_{n,h} as an exact rational. Cost grows with the size of the integers;
/// intended for N up to a few dozen.
inline Rational expected_entropy_rational(int n, int num_qubits, int h) {
    const auto terms = enumerate_orbit_terms(n, num_qubits, h, true);
    BigInt numerator = 0, denominator = 0;
    for (const OrbitTerm &t : terms) {
        numerator += BigInt(t.entropy(n)) * *t.exact_weight;
        denominator += *t.exact_weight;
    }
    return Rational(numerator, denominator);
}

struct HolevoExact {
    long double chi = 0;
    long double es_n_amount = 0;  // E S_{n,H}
    long double es_n0 = 0;        // E S_{n,0}
    /// H - chi, evaluated without cancellation against H.
    long double deficit = 0;
};

/// Average Holevo information E S_{n,H} - E S_{n,0} under Haar-random Cliffords.
inline HolevoExact holevo_exact(int n, int num_qubits, int amount) {
    if (amount < 1 || amount > num_qubits) {
        throw std::invalid_argument("holevo_exact: need 1 <= H <= N");
    }
    const auto mixed = detail::expected_entropy_split(n, num_qubits, amount);
    const auto pure = detail::expected_entropy_split(n, num_qubits, 0);
    HolevoExact out;
    out.es_n_amount = mixed.mean();
    out.es_n0 = pure.mean();
    const int peak_gap = mixed.peak_entropy - pure.peak_entropy;
    out.chi = static_cast<long double>(peak_gap) + (mixed.deviation - pure.deviation);
    out.deficit = static_cast<long double>(amount - peak_gap) - (mixed.deviation - pure.deviation);
    if (out.chi < 0 && out.chi > -1e-15L) {
        out.chi = 0;
    }
    return out;
}

inline Rational holevo_exact_rational(int n, int num_qubits, int amount) {
    if (amount < 1 || amount > num_qubits) {
        throw std::invalid_argument("holevo_exact_rational: need 1 <= H <= N");
    }
    return expected_entropy_rational(n, num_qubits, amount) - expected_entropy_rational(n, num_qubits, 0);
}

/// chi / H in the limit n, N, H -> infinity at fixed r_n = n/N, r_H = H/N.
inline double thermo_limit(double r_n, double r_h) {
    if (!(r_n > 0 && r_n <= 1) || !(r_h > 0 && r_h <= 1)) {
        throw std::invalid_argument("thermo_limit: ratios must lie in (0, 1]");
    }
    if (r_n <= 0.5) {
        return 0.0;
    }
    if (r_n <= 0.5 * (1 + r_h)) {
        return (2 * r_n - 1) / r_h;
    }
    return 1.0;
}

enum class Transition { first, second };

/// Least-squares slope of log|f(tau)| against log(tau), where tau is the
/// distance from the transition and f is the limiting chi/H (first
/// transition) or 1 - chi/H (second transition).
inline double critical_exponent_estimate(Transition side, double r_h, std::span<const double> taus) {
    if (!(r_h > 0 && r_h <= 1)) {
        throw std::invalid_argument("critical_exponent_estimate: r_H must lie in (0, 1]");
    }
    if (taus.size() < 2) {
        throw std::invalid_argument("critical_exponent_estimate: need at least two tau values");
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double tau = taus[i];
        if (!(tau > 0)) {
            throw std::invalid_argument("critical_exponent_estimate: tau values must be positive");
        }
        if (i > 0 && !(tau < taus[i - 1])) {
            throw std::invalid_argument("critical_exponent_estimate: tau values must decrease");
        }
        // Both transitions are a distance r_H / 2 apart.
        if (tau >= r_h / 2) {
            throw std::invalid_argument("critical_exponent_estimate: tau crosses the other branch boundary");
        }
        const double f = side == Transition::first ? thermo_limit(0.5 + tau, r_h)
                                                   : 1.0 - thermo_limit(0.5 * (1 + r_h) - tau, r_h);
        xs.push_back(std::log(tau));
        ys.push_back(std::log(std::fabs(f)));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

/// Heaviest class by exact comparison of |Stab| (smaller stabilizer means a
/// larger class); ties go to the lexicographically smallest (k1, k2, l1, l2).
inline OrbitTerm brute_force_argmax(int n, int num_qubits, int h) {
    auto terms = enumerate_orbit_terms(n, num_qubits, h);
    const int m = num_qubits - n;
    std::size_t best = 0;
    BigInt best_stab = stabilizer_subgroup_order(terms[0], n, m, h);
    for (std::size_t i = 1; i < terms.size(); ++i) {
        BigInt stab = stabilizer_subgroup_order(terms[i], n, m, h);
        if (stab < best_stab) {
            best = i;
            best_stab = std::move(stab);
        }
    }
    return terms[best];
}

/// Large-N maximizer of the class size:
///   n < (N-h)/2:            (n, 0, 0, N-h-2n)
///   (N-h)/2 <= n <= (N+h)/2: ((N-h)/2, 0, 0, 0)
///   n > (N+h)/2:            (N-n, 0, 2n-N-h, 0)
/// Falls back to brute_force_argmax when (N-h)/2 is not an integer.
inline OrbitTerm argmax_orbit_weight(int n, int num_qubits, int h) {
    detail::check_sizes(n, num_qubits, h);
    const int N = num_qubits;
    OrbitTerm t;
    if (2 * n < N - h) {
        t = OrbitTerm{n, 0, 0, N - h - 2 * n, {}, std::nullopt};
    } else if (2 * n <= N + h) {
        if ((N - h) % 2 != 0) {
            return brute_force_argmax(n, num_qubits, h);
        }
        t = OrbitTerm{(N - h) / 2, 0, 0, 0, {}, std::nullopt};
    } else {
        t = OrbitTerm{N - n, 0, 2 * n - N - h, 0, {}, std::nullopt};
    }
    const int m = N - n;
    t.log2_weight = detail::clifford_log2(n) + detail::clifford_log2(m) - stabilizer_subgroup_log2(t, n, m, h);
    return t;
}

enum class KktVerdict { holds, violated, inconclusive };

inline std::string_view to_string(KktVerdict v) {
    switch (v) {
        case KktVerdict::holds:
            return "holds";
        case KktVerdict::violated:
            return "violated";
        default:
            return "inconclusive";
    }
}

struct KktReport {
    int regime = 0;  // 1, 2 or 3; 0 on a regime boundary
    std::array<double, 3> multipliers{};
    KktVerdict verdict = KktVerdict::inconclusive;
    bool hessian_negative_definite = false;
};

/// Negative definiteness of the Hessian of the continuum objective in
/// (k1, k2, l1) via Sylvester's criterion on its negation.
inline bool continuum_hessian_negative_definite() {
    const double h[3][3] = {{-8, -4, -6}, {-4, -7, -3}, {-6, -3, -6}};
    const double m1 = -h[0][0];
    const double m2 = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    const double det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                       h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                       h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    return m1 > 0 && m2 > 0 && -det > 0;
}

/// Evaluates the closed-form KKT multipliers of the active regime. Exactly on
/// a regime boundary, or when a regime-1/3 multiplier is negative within two
/// qubits of a boundary (where the strict-inequality derivation does not
/// apply), the verdict is inconclusive.
inline KktReport verify_kkt(int n, int num_qubits, int h) {
    detail::check_sizes(n, num_qubits, h);
    const double N = num_qubits, H = h, nn = n;
    KktReport r;
    r.hessian_negative_definite = continuum_hessian_negative_definite();
    const int lower = num_qubits - h, upper = num_qubits + h;
    if (2 * n == lower || 2 * n == upper) {
        r.regime = 0;
        r.verdict = KktVerdict::inconclusive;
        return r;
    }
    if (2 * n < lower) {
        r.regime = 1;
        r.multipliers = {2 * (N - H - 2 * nn - 1), N - H - 2 * nn - 1.5, N + H - 2 * nn - 2};
    } else if (2 * n < upper) {
        r.regime = 2;
        r.multipliers = {2 * nn + H - N - 1, -0.5, N + H - 2 * nn - 1};
    } else {
        r.regime = 3;
        r.multipliers = {-2 + H + 2 * nn - N, -1.5 - H + 2 * nn - N, -2 * (1 + H - 2 * nn + N)};
    }
    const bool nonnegative = std::all_of(r.multipliers.begin(), r.multipliers.end(), [](double mu) { return mu >= 0; });
    if (nonnegative) {
        r.verdict = KktVerdict::holds;
    } else if (r.regime != 2 && std::min(std::abs(2 * n - lower), std::abs(2 * n - upper)) <= 4) {
        r.verdict = KktVerdict::inconclusive;
    } else {
        r.verdict = KktVerdict::violated;
    }
    return r;
}

}  // namespace scramble::exact
