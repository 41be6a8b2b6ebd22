// Copyright 2026 The qpdite developers
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
#include <initializer_list>

namespace qpdite {

/// splitmix64 finalizer; used both as a generator step and as a mixing hash.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based splittable stream. Streams are derived from a (seed, path)
/// key so that trial j's randomness is independent of execution order and of
/// how trials are partitioned across workers.
class RandomStream {
 public:
  explicit RandomStream(uint64_t key) : state_(key) {}

  static RandomStream derive(uint64_t seed, std::initializer_list<uint64_t> path) {
    uint64_t k = splitmix64(seed ^ 0xA5A5A5A55A5A5A5AULL);
    for (uint64_t p : path) k = splitmix64(k ^ splitmix64(p ^ 0xD1B54A32D192ED03ULL));
    return RandomStream(k);
  }

  uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_ ^ counter_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n).
  uint64_t uniform_int(uint64_t n) {
    if (n == 0) return 0;
    uint64_t bound = ~uint64_t(0) - (~uint64_t(0) % n);
    uint64_t r;
    do {
      r = next_u64();
    } while (r >= bound);
    return r % n;
  }

  int bit() { return static_cast<int>(next_u64() >> 63); }

 private:
  uint64_t state_;
  uint64_t counter_ = 0;
};

// Stream-domain tags; keeps derived streams for different purposes disjoint.
namespace stream_domain {
inline constexpr uint64_t kTrial = 1;
inline constexpr uint64_t kClifford = 2;
inline constexpr uint64_t kPauli = 3;
inline constexpr uint64_t kTpqRun = 4;
inline constexpr uint64_t kRepetition = 5;
}  // namespace stream_domain

}  // namespace qpdite
