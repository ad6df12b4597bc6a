//------------------------------------------------------------------------------
//
//   Copyright 2026 The qbsc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <cstdint>

namespace qbsc {

/**
 * TrialRng — xoshiro256** seeded per (seed, stream) pair.
 *
 * Every Monte Carlo trial gets its own stream, so aggregate counts are
 * identical whether trials run serially or split across any number of
 * threads. The generator is self-contained and produces the same sequence
 * on every platform; std:: distributions are avoided for the same reason.
 */
class TrialRng {
 public:
  using result_type = std::uint64_t;

  explicit TrialRng(std::uint64_t seed, std::uint64_t stream = 0) {
    // Avalanche both inputs before expanding with splitmix64 so that
    // neighbouring (seed, stream) pairs start from uncorrelated states.
    std::uint64_t init = mix(seed + 0x9E3779B97F4A7C15ULL) ^
                         mix(stream * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL);
    for (auto& word : state_) {
      word = splitmix64(init);
    }
  }

  std::uint64_t operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Bernoulli trial: true with probability p.
  bool bernoulli(double p) { return uniform() < p; }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    return mix(z);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace qbsc
