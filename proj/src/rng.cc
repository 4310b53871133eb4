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

#include "aml/rng.h"

#include <cmath>
#include <numbers>

#include "aml/error.h"

namespace aml {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  std::uint64_t out = splitmix64_next(s);
  s = out ^ a;
  out = splitmix64_next(s);
  s = out ^ b;
  return splitmix64_next(s);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t id_state = stream_id;
  std::uint64_t sm = seed ^ splitmix64_next(id_state);
  for (auto& word : state_) word = splitmix64_next(sm);
}

RngStream RngStream::from_state(const std::array<std::uint64_t, 4>& state) {
  require(state[0] | state[1] | state[2] | state[3], ErrorCode::kInvalidArgument,
          "xoshiro256** state must not be all zero");
  RngStream s;
  s.state_ = state;
  return s;
}

std::uint64_t RngStream::next_u64() {
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

double RngStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_uniform();
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  require(n > 0, ErrorCode::kInvalidArgument, "next_below needs n > 0");
  // Lemire's multiply-shift with rejection of the biased low region.
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::next_gaussian(double mean, double stddev) {
  require(stddev > 0.0, ErrorCode::kInvalidArgument, "gaussian stddev must be > 0");
  if (has_spare_) {
    has_spare_ = false;
    return mean + stddev * spare_;
  }
  const double u1 = 1.0 - next_uniform();  // (0, 1]
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return mean + stddev * (r * std::cos(theta));
}

}  // namespace aml
