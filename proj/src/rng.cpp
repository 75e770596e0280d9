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

#include "haarmagic/rng.hpp"

#include <bit>

namespace haarmagic {

RngStream::RngStream(uint64_t key) noexcept {
    uint64_t x = key;
    for (auto &w : s_) {
        x += 0x9E3779B97F4A7C15ULL;
        w = splitmix64(x);
    }
    // All-zero state is a fixed point of xoshiro.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) {
        s_[0] = 1;
    }
}

RngStream::result_type RngStream::operator()() noexcept {
    const uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

RngStream rng_stream_for(uint64_t seed, uint64_t point_id, uint64_t sample_index) noexcept {
    uint64_t key = splitmix64(seed ^ 0x6A09E667F3BCC908ULL);
    key = splitmix64(key ^ point_id);
    key = splitmix64(key ^ (sample_index * 0xD1342543DE82EF95ULL + 1));
    return RngStream(key);
}

}  // namespace haarmagic
