// Copyright 2026 The starqed Authors
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
#include <limits>

namespace starqed {

/// SplitMix64 finalizer. Bijective 64-bit mixing function.
constexpr uint64_t mix64(uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: output i is mix64(key + (i + 1) * golden_gamma).
///
/// Satisfies std::uniform_random_bit_generator, so it plugs into the <random>
/// distributions. Per-shot streams are derived with `stream_key`, which makes
/// every shot reproducible independently of execution order.
class CounterRng {
   public:
    using result_type = uint64_t;

    constexpr explicit CounterRng(uint64_t key = 0) noexcept : state_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += kGamma;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool coin() noexcept { return ((*this)() >> 63) != 0; }

   private:
    static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    uint64_t state_;
};

/// Key for the `stream`-th generator of shot `shot` under `master_seed`.
constexpr uint64_t stream_key(uint64_t master_seed, uint64_t shot, uint64_t stream) noexcept {
    uint64_t h = mix64(master_seed ^ 0x5851F42D4C957F2DULL);
    h = mix64(h ^ (shot * 0xD1B54A32D192ED03ULL));
    return mix64(h ^ (stream + 0x2545F4914F6CDD1DULL));
}

}  // namespace starqed
