// Copyright 2026 The ACES Toolkit Authors
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
#include <initializer_list>
#include <string>

namespace aces {

/// Deterministic, platform-independent RNG (splitmix64 core) with splittable
/// child streams. All randomness in the toolkit flows from one master seed
/// through child() derivations, so merged results are schedule-independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    // Multiply-shift reduction; the modulo bias is negligible at these sizes
    // and the mapping is identical on every platform.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  bool next_bool() { return next_u64() & 1; }

  /// Derives an independent stream from the constructor seed and the tags.
  /// Children are a function of the origin seed only, never of how much of
  /// this stream has been consumed.
  Rng child(std::initializer_list<std::uint64_t> tags) const {
    std::uint64_t s = seed_;
    for (std::uint64_t t : tags) {
      s ^= t + 0x9E3779B97F4A7C15ull + (s << 6) + (s >> 2);
      Rng mix(s);
      s = mix.next_u64();
    }
    return Rng(s);
  }

  std::uint64_t seed() const { return seed_; }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }
  result_type operator()() { return next_u64(); }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// Stable 64-bit hash of a byte string, for deriving stream tags from labels.
inline std::uint64_t fnv1a(const char* data, std::uint64_t len) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (std::uint64_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001B3ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) {
  return fnv1a(s.data(), s.size());
}

}  // namespace aces
