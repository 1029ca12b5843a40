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
#include "darwinium/rng.hpp"

namespace darwinium {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

CounterRng::result_type CounterRng::operator()() noexcept {
    const std::uint64_t c = counter_++;
    // Two rounds: one keyed by the stream, one by the counter.
    return mix64(mix64(key_ + kGolden * (c + 1)) ^ c);
}

double CounterRng::uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

CounterRng CounterRng::substream(std::uint64_t index) const noexcept {
    return CounterRng(mix64(key_ ^ mix64(index * kStreamSalt + kGolden)));
}

}  // namespace darwinium
