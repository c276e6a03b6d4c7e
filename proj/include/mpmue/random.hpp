// Copyright 2026 The mpmue Authors
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

#ifndef MPMUE_RANDOM_HPP
#define MPMUE_RANDOM_HPP

#include <cstdint>

namespace mpmue {

/// Counter-based SplitMix64 stream.
///
/// The k-th output (k = 0, 1, ...) of a stream with seed s is
///
///     z  = s + (k + 1) * 0x9E3779B97F4A7C15        (mod 2^64)
///     z  = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z  = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     out = z ^ (z >> 31)
///
/// and a uniform variate is ((out >> 11) + 0.5) * 2^-53, which lies strictly
/// inside (0, 1). The whole state is (seed, position), so any implementation
/// of the formula above reproduces the same variates bit for bit.
///
/// A stream has a single owner: it is movable but not copyable.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

  /// Independent stream for work item `index` under a master seed.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  RandomStream(const RandomStream&) = delete;
  RandomStream& operator=(const RandomStream&) = delete;
  RandomStream(RandomStream&&) noexcept = default;
  RandomStream& operator=(RandomStream&&) noexcept = default;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64();

 private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
};

/// SplitMix64 finalizer applied to a single word.
std::uint64_t splitmix64_mix(std::uint64_t z);

/// Uniform on the open interval (0, 1); consumes one output.
double stream_uniform(RandomStream& s);

/// Exponential with the given rate by inversion, -ln(U) / rate.
double stream_exp(RandomStream& s, double rate);

/// Gamma(n, 1) for integer n >= 1 as a sum of n unit exponentials.
double stream_gamma_int(RandomStream& s, unsigned n);

}  // namespace mpmue

#endif  // MPMUE_RANDOM_HPP
