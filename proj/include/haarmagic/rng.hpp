// Copyright 2026 The haarmagic Authors
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

#include <array>
#include <cstdint>
#include <limits>

namespace haarmagic {

/// SplitMix64 finalizer. Bijective 64-bit mixing function.
constexpr uint64_t splitmix64(uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// A xoshiro256** generator. Satisfies UniformRandomBitGenerator so it can
/// drive the <random> distributions.
class RngStream {
  public:
    using result_type = uint64_t;

    explicit RngStream(uint64_t key) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  private:
    std::array<uint64_t, 4> s_;
};

/// Counter-based stream derivation: the same (seed, point_id, sample_index)
/// triple always yields the same stream, independent of scheduling.
RngStream rng_stream_for(uint64_t seed, uint64_t point_id, uint64_t sample_index) noexcept;

}  // namespace haarmagic
