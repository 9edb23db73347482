// Copyright 2026 The Fockdyn Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

namespace fockdyn {

/// Splittable counter-based seeding: advances a splitmix64 state and returns
/// a well-mixed 64-bit word. Used both as a generator bootstrap and as a
/// stream-id mixer.
constexpr inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ with fully specified integer arithmetic, so identical seeds
/// give identical sequences on every host and compiler.
///
/// Streams are derived from a (master seed, stream index) pair; independent
/// realizations of a disorder ensemble each get their own stream and may be
/// generated concurrently.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream) noexcept {
    std::uint64_t s = master_seed;
    std::uint64_t mixed = splitmix64(s) ^ (stream * 0xd1342543de82ef95ULL);
    for (auto& word : state_) word = splitmix64(mixed);
    // xoshiro must not start from the all-zero state
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in (0, 1]: 53 random bits, never exactly zero.
  double next_uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via the Marsaglia polar transform. The rejection loop is
  /// deterministic for a fixed stream; the second deviate of each accepted
  /// pair is cached.
  double next_gaussian() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_uniform() - 1.0;
      v = 2.0 * next_uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

  double next_gaussian(double mean, double stddev) noexcept {
    return mean + stddev * next_gaussian();
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes substream labels into a single stream index, e.g. (realization,
/// purpose) -> stream id for RngStream.
constexpr inline std::uint64_t substream(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t s = a * 0x9e3779b97f4a7c15ULL + b;
  return splitmix64(s);
}

}  // namespace fockdyn
