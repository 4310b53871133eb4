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

#ifndef AML_JL_H_
#define AML_JL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "aml/projection.h"
#include "aml/rng.h"

namespace aml {

// Closed-form bounds. Logarithms are natural.

// Smallest D_a with D_a >= 8 ln(M N / sigma) / eps^2.
std::size_t jl_dim_bound(std::size_t m, std::size_t n, double sigma, double epsilon);
// The same bound before rounding up.
double jl_dim_bound_real(std::size_t m, std::size_t n, double sigma, double epsilon);
// Inversion of the bound: eps = sqrt(8 ln(M N / sigma) / D_a).
double jl_epsilon(std::size_t d_a, std::size_t m, std::size_t n, double sigma);
// 2 exp(-d eps^2 / 8), clamped to at most 1.
double chi2_tail_bound(std::size_t d, double epsilon);

// Empirical summary of a Monte Carlo verifier.
//   violation_rate  fraction of trials whose |statistic error| exceeded eps
//   mean_abs_error  mean |error| across trials
//   max_abs_error   largest |error|
//   mean_statistic  mean of the raw statistic (distance ratio, signed
//                   inner-product error, or squared-norm ratio)
struct DistortionReport {
  std::string mode;
  std::size_t trials = 0;
  double epsilon_target = 0.0;
  std::size_t violations = 0;
  double violation_rate = 0.0;
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  double mean_statistic = 0.0;
};

// One metric per line, key=value.
std::string format_report(const DistortionReport& report);

// Squared distance between the block-diagonal images of z = [v; u] and
// z' = [v2; u2] under (1/sqrt 2) diag(W_image^T, W_text^T).
double block_projected_sq_distance(const ProjectionPair& proj,
                                   std::span<const double> v, std::span<const double> u,
                                   std::span<const double> v2,
                                   std::span<const double> u2);

// Relative distortion of the block-diagonal map against its expected value
// (1/2)||z - z'||^2, i.e. ratio - 1. Zero when z == z'.
double block_distance_distortion(const ProjectionPair& proj,
                                 std::span<const double> v, std::span<const double> u,
                                 std::span<const double> v2,
                                 std::span<const double> u2);

// <W_image^T v, W_text^T u> - <v, u>, the raw inner product taken over the
// shared leading coordinates (zero padding to a common ambient dimension).
double cross_inner_error(const ProjectionPair& proj, std::span<const double> v,
                         std::span<const double> u);

// ||W w||^2 for a fresh W in R^{d x |w|} with N(0, 1/d) entries drawn
// row-major from `rng`.
double projected_sq_norm(RngStream& rng, std::span<const double> w, std::size_t d);

// Monte Carlo verifiers. The projection pair is sampled once from `seed`;
// trial t draws its vectors from stream kMonteCarloBase + t and results are
// reduced in trial order, so reports are identical for any thread count.
DistortionReport mc_block_distance_distortion(std::uint64_t seed, std::size_t trials,
                                              std::size_t d_image, std::size_t d_text,
                                              std::size_t d_a, double epsilon);

DistortionReport mc_cross_inner_error(std::uint64_t seed, std::size_t trials,
                                      std::size_t d_image, std::size_t d_text,
                                      std::size_t d_a, double epsilon = 0.1);

// Tail of ||W w||^2 / ||w||^2 around 1 with w uniform of dimension
// `input_dim` (any fixed w gives chi^2_d / d).
DistortionReport mc_chi2_tail(std::uint64_t seed, std::size_t trials, std::size_t d,
                              double epsilon, std::size_t input_dim = 2);

}  // namespace aml

#endif  // AML_JL_H_
