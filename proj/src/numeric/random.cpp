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

#include "mpmue/random.hpp"

#include <cmath>

#include "mpmue/errors.hpp"

namespace mpmue {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(splitmix64_mix(seed ^ splitmix64_mix(index ^ 0xD1B54A32D192ED03ULL)));
}

std::uint64_t RandomStream::next_u64() {
  ++position_;
  return splitmix64_mix(seed_ + position_ * kGolden);
}

double stream_uniform(RandomStream& s) {
  return (static_cast<double>(s.next_u64() >> 11) + 0.5) * kTwoPowMinus53;
}

double stream_exp(RandomStream& s, double rate) {
  if (!(rate > 0.0)) throw DomainError("stream_exp: rate must be positive");
  return -std::log(stream_uniform(s)) / rate;
}

double stream_gamma_int(RandomStream& s, unsigned n) {
  if (n == 0) throw DomainError("stream_gamma_int: shape must be >= 1");
  double sum = 0.0;
  for (unsigned i = 0; i < n; ++i) sum += stream_exp(s, 1.0);
  return sum;
}

}  // namespace mpmue
