// Copyright 2026 The AML Authors.
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

#ifndef AML_RNG_H_
#define AML_RNG_H_

#include <array>
#include <cstdint>

namespace aml {

// Stream ids reserved per purpose, so draws added in one subsystem never shift
// the sequence seen by another.
namespace streams {
inline constexpr std::uint64_t kProjection = 1;
inline constexpr std::uint64_t kDropout = 2;
inline constexpr std::uint64_t kPerturb = 3;
// Monte Carlo trial t uses kMonteCarloBase + t.
inline constexpr std::uint64_t kMonteCarloBase = 4;
// Toy pipeline streams sit far above any realistic trial index.
inline constexpr std::uint64_t kToyData = std::uint64_t{1} << 62;
inline constexpr std::uint64_t kToyModel = kToyData + 1;
}  // namespace streams

std::uint64_t splitmix64_next(std::uint64_t& state);

// Mixes several integers into one 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// xoshiro256** seeded through SplitMix64 from (seed ^ splitmix(stream_id)).
// Gaussians come from Box-Muller on consecutive uniform pairs; the second
// value of each pair is returned by the next gaussian call.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static RngStream from_state(const std::array<std::uint64_t, 4>& state);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double next_uniform();
  double next_uniform(double lo, double hi);
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t next_below(std::uint64_t n);
  double next_gaussian(double mean = 0.0, double stddev = 1.0);

  const std::array<std::uint64_t, 4>& state() const { return state_; }

 private:
  RngStream() = default;

  std::array<std::uint64_t, 4> state_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline RngStream new_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return RngStream(seed, stream_id);
}

}  // namespace aml

#endif  // AML_RNG_H_
