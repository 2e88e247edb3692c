// Copyright 2026 The algebench Authors
//
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

#ifndef ALGEBENCH_RNG_HPP
#define ALGEBENCH_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace algebench {

/// Counter-based pseudorandom stream keyed by a tuple of integers.
///
/// draw(i) for a fixed key is a pure function of (key, i): the same key
/// always yields the same sequence, independent of call order or thread
/// interleaving elsewhere. The mixer is the splitmix64 finalizer, which is
/// platform-independent by construction.
class KeyedRng {
public:
    explicit KeyedRng(std::initializer_list<std::uint64_t> key_parts) {
        std::uint64_t h = 0x8f52'8bd0'5a8f'c263ull;
        for (std::uint64_t part : key_parts) h = mix64(h ^ mix64(part));
        state_ = h;
    }

    std::uint64_t next_u64() { return mix64(state_ + (++counter_) * kGolden); }

    /// Uniform in [0, n); unbiased via rejection.
    std::uint64_t uniform(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("KeyedRng: empty range");
        const std::uint64_t limit = (UINT64_MAX / n) * n;
        std::uint64_t r = next_u64();
        while (r >= limit) r = next_u64();
        return r % n;
    }

    /// Uniform in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("KeyedRng: bad bounds");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1ull;
        return lo + static_cast<std::int64_t>(uniform(span));
    }

    bool coin() { return (next_u64() & 1ull) != 0; }

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58'476D'1CE4'E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D0'49BB'1331'11EBull;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E37'79B9'7F4A'7C15ull;
    std::uint64_t state_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace algebench

#endif  // ALGEBENCH_RNG_HPP
