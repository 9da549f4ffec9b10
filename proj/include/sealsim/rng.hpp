// Copyright 2026 The sealsim Authors
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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

namespace sealsim {

/**
 * SplitMix64 generator with a fixed substream derivation.
 *
 * Round r of an experiment seeded with base seed s draws from
 *
 *     state_0 = mix(s ^ mix(r + 0x9E3779B97F4A7C15))
 *
 * where mix is the SplitMix64 output finalizer. Each round owns its stream,
 * so results do not depend on how rounds are distributed over workers.
 * Uniform doubles take the top 53 bits, so every platform produces the same
 * sequence (std:: distributions are implementation-defined).
 */
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    static constexpr std::string_view kName = "splitmix64-substream-v1";
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_{seed} {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr SplitMix64 substream(std::uint64_t base_seed,
                                          std::uint64_t round) noexcept {
        return SplitMix64{mix(base_seed ^ mix(round + kGolden))};
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    constexpr double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). n must be positive.
    constexpr std::size_t index(std::size_t n) noexcept {
        auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

  private:
    std::uint64_t state_;
};

} // namespace sealsim
