// Copyright 2026 The divsum Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIVSUM_RNG_HPP
#define DIVSUM_RNG_HPP

// Counter-based generator: sample i of stream `seed` is a pure function of
// (seed, i), so Monte-Carlo work can be split across threads in any order
// without changing the stream. Mixing function is SplitMix64's finalizer.

#include <cstdint>

namespace divsum {

inline std::uint64_t counter_rng_u64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform in [0, 1), 53 random bits.
inline double counter_rng_unit(std::uint64_t seed, std::uint64_t counter) {
    return double(counter_rng_u64(seed, counter) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline std::uint64_t counter_rng_below(std::uint64_t seed, std::uint64_t counter,
                                       std::uint64_t n) {
    return counter_rng_u64(seed, counter) % n;
}

}  // namespace divsum

#endif  // DIVSUM_RNG_HPP
