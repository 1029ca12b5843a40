// Copyright 2026 The darwinium Authors
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
#pragma once

#include <cstdint>
#include <limits>

namespace darwinium {

/**
 * Counter-based 64-bit generator.
 *
 * Output i of a stream is a fixed bijective mix of (key, i), so a stream
 * can be split into independent substreams by deriving a new key, and the
 * value sequence never depends on the thread that consumes it.
 */
class CounterRng {
  public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key = 0) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Independent stream keyed by (this key, index). Does not advance *this.
    [[nodiscard]] CounterRng substream(std::uint64_t index) const noexcept;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
    [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace darwinium
