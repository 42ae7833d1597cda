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

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>

namespace scramble {

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream (SplitMix64). A stream is fully determined by
/// its key and position, so independent streams can be derived from a master
/// seed plus any tuple of indices without touching shared state.
///
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
   public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed = 0) : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

    /// Stream keyed by `master` and an ordered list of fields.
    static RandomStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> fields) {
        std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ULL);
        for (std::uint64_t f : fields) {
            h = mix64(h ^ mix64(f + 0x9e3779b97f4a7c15ULL));
        }
        RandomStream s;
        s.key_ = h;
        return s;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix64(key_ + counter_);
    }

    /// Uniform integer in [0, bound). Lemire's multiply-and-reject; exact.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("uniform_below: bound must be positive");
        }
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        std::uint64_t low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool coin() { return (*this)() >> 63; }

    bool operator==(const RandomStream &) const = default;

   private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace scramble
