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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "aml/error.h"
#include "aml/jl.h"
#include "aml/parallel.h"

namespace aml {
namespace {

TEST(JlBoundTest, DimensionBoundExample) {
  // 8 ln(196 * 20 / 0.05) / 0.2^2 = 2253.92
  EXPECT_EQ(jl_dim_bound(196, 20, 0.05, 0.2), 2254u);
  EXPECT_NEAR(jl_dim_bound_real(196, 20, 0.05, 0.2), 2253.9158, 1e-3);
}

TEST(JlBoundTest, HalvingEpsilonQuadruplesBound) {
  const double a = jl_dim_bound_real(196, 20, 0.05, 0.2);
  const double b = jl_dim_bound_real(196, 20, 0.05, 0.1);
  EXPECT_NEAR(b / a, 4.0, 1e-12);
}

TEST(JlBoundTest, RangeChecks) {
  EXPECT_THROW(jl_dim_bound(196, 20, 1.5, 0.2), Error);
  EXPECT_THROW(jl_dim_bound(196, 20, 0.05, 1.0), Error);
  EXPECT_THROW(jl_dim_bound(0, 20, 0.05, 0.2), Error);
  EXPECT_THROW(jl_epsilon(0, 1, 1, 0.5), Error);
  EXPECT_THROW(chi2_tail_bound(0, 0.5), Error);
}

TEST(JlEpsilonTest, InvertsTheBound) {
  const double eps = jl_epsilon(2254, 196, 20, 0.05);
  EXPECT_LE(eps, 0.2);
  EXPECT_NEAR(eps, 0.2, 1e-4);
}

TEST(JlEpsilonTest, QuadrupledDimensionHalvesEpsilon) {
  EXPECT_NEAR(jl_epsilon(4096, 100, 10, 0.1) / jl_epsilon(1024, 100, 10, 0.1), 0.5, 1e-12);
}

TEST(JlEpsilonTest, ProductWithRootDimensionIsConstant) {
  const double c1 = jl_epsilon(1024, 196, 20, 0.05) * std::sqrt(1024.0);
  for (std::size_t da : {2048u, 4096u, 777u}) {
    EXPECT_NEAR(jl_epsilon(da, 196, 20, 0.05) * std::sqrt(static_cast<double>(da)), c1, 1e-9);
  }
}

TEST(JlEpsilonTest, TableValuesShareOneConstant) {
  // eps * sqrt(D_a) for the reported 0.2955 / 0.2088 / 0.1478.
  const double k1 = 0.2955 * 32.0, k2 = 0.2088 * std::sqrt(2048.0), k3 = 0.1478 * 64.0;
  const double lo = std::min({k1, k2, k3}), hi = std::max({k1, k2, k3});
  EXPECT_LT((hi - lo) / lo, 0.0015);
}

TEST(JlEpsilonTest, PredictsSecondRowFromFirst) {
  // ln(MN / sigma) fitted from the D_a = 1024 row.
  const double log_ratio = 0.2955 * 0.2955 * 1024.0 / 8.0;
  EXPECT_NEAR(log_ratio, 11.177, 1e-3);
  // Choose integer M, N, sigma reproducing that constant.
  const double sigma = 0.5;
  const double mn = std::exp(log_ratio) * sigma;
  const auto m = static_cast<std::size_t>(std::round(mn));
  const double eps = jl_epsilon(2048, m, 1, sigma);
  EXPECT_NEAR(eps, 0.2088, 1e-3);
}

TEST(Chi2BoundTest, Values) {
  EXPECT_NEAR(chi2_tail_bound(2048, 0.2), 7.1426e-5, 1e-8);
  EXPECT_EQ(chi2_tail_bound(8, 0.5), 1.0);  // 2 e^{-0.25} = 1.558
  EXPECT_EQ(chi2_tail_bound(100, 0.0), 1.0);
  EXPECT_NEAR(chi2_tail_bound(512, 0.3), 2.0 * std::exp(-5.76), 1e-15);
}

TEST(BlockDistanceTest, IdenticalPairHasNoDistortion) {
  const auto proj = sample_projection(1, 12, 6, 64);
  std::vector<double> v(12, 0.0), u(6, 0.0);
  v[3] = 1.0;
  u[0] = 1.0;
  EXPECT_EQ(block_distance_distortion(proj, v, u, v, u), 0.0);
  EXPECT_EQ(block_projected_sq_distance(proj, v, u, v, u), 0.0);
}

TEST(BlockDistanceTest, ScaledMapHalvesSquaredDistanceOnAverage) {
  // With N(0, 1/D_a) blocks, E||W~ (z - z')||^2 = ||z - z'||^2 / 2.
  const auto proj = sample_projection(3, 64, 32, 4096);
  std::vector<double> v(64, 0.0), u(32, 0.0), v2(64, 0.0), u2(32, 0.0);
  v[0] = 1.0;
  v2[1] = 1.0;
  u[0] = 1.0;
  u2[5] = 1.0;
  const double projected = block_projected_sq_distance(proj, v, u, v2, u2);
  EXPECT_NEAR(projected / 4.0, 0.5, 0.05);
}

TEST(McBlockDistanceTest, LargeProjectionRarelyViolates) {
  const auto r = mc_block_distance_distortion(42, 2000, 128, 64, 2048, 0.21);
  EXPECT_EQ(r.trials, 2000u);
  EXPECT_LT(r.violation_rate, 0.05);
  EXPECT_NEAR(r.mean_statistic, 1.0, 0.01);
}

TEST(McBlockDistanceTest, UndersizedProjectionViolatesOften) {
  const auto r = mc_block_distance_distortion(42, 2000, 128, 64, 8, 0.05);
  EXPECT_GT(r.violation_rate, 0.5);
  EXPECT_DOUBLE_EQ(r.violation_rate, static_cast<double>(r.violations) / r.trials);
}

TEST(McBlockDistanceTest, DistortionShrinksWithDimension) {
  double previous = 1e9;
  for (std::size_t da : {64u, 256u, 1024u}) {
    const auto r = mc_block_distance_distortion(8, 1000, 64, 32, da, 0.1);
    EXPECT_LT(r.mean_abs_error, previous) << da;
    previous = r.mean_abs_error;
  }
}

TEST(McCrossInnerTest, OrthogonalPairConcentratesAtZero) {
  const std::size_t da = 1024;
  const auto proj = sample_projection(9, 16, 16, da);
  // Disjoint supports, so the raw inner product is exactly zero.
  std::vector<double> v(16, 0.0), u(16, 0.0);
  v[0] = 1.0;
  u[1] = 1.0;
  double projected = 0.0;
  for (std::size_t c = 0; c < da; ++c)
    projected += static_cast<double>(proj.w_image(0, c)) * proj.w_text(1, c);
  EXPECT_NEAR(cross_inner_error(proj, v, u), projected, 1e-12);
}

TEST(McCrossInnerTest, ErrorScaleIsOneOverRootDa) {
  // Independent blocks: projected product ~ N(0, 1/D_a); the raw product of
  // random unit vectors in d dims adds variance 1/d.
  const std::size_t da = 512, d = 64;
  const auto r = mc_cross_inner_error(5, 4000, d, d, da);
  const double sd = std::sqrt(1.0 / static_cast<double>(da) + 1.0 / static_cast<double>(d));
  const double expected_mad = std::sqrt(2.0 / M_PI) * sd;
  EXPECT_NEAR(r.mean_abs_error / expected_mad, 1.0, 0.1);
}

TEST(McCrossInnerTest, RejectsZeroTrials) {
  EXPECT_THROW(mc_cross_inner_error(1, 0, 4, 4, 4), Error);
  EXPECT_THROW(mc_block_distance_distortion(1, 0, 4, 4, 4, 0.1), Error);
  EXPECT_THROW(mc_chi2_tail(1, 0, 4, 0.1), Error);
}

TEST(McChi2Test, MeanIsOne) {
  const auto r = mc_chi2_tail(77, 20000, 512, 0.3);
  EXPECT_GE(r.mean_statistic, 0.99);
  EXPECT_LE(r.mean_statistic, 1.01);
}

TEST(McChi2Test, TailBelowAnalyticBound) {
  const std::size_t trials = 20000;
  const auto r = mc_chi2_tail(78, trials, 512, 0.3);
  const double bound = chi2_tail_bound(512, 0.3);
  const double se = std::sqrt(bound * (1.0 - bound) / trials);
  EXPECT_LE(r.violation_rate, bound + 3.0 * se);
}

TEST(McChi2Test, ScalingInputScalesSquaredNormByFour) {
  RngStream a(4, 4), b(4, 4);
  const std::vector<double> w{0.6, 0.8};
  const std::vector<double> w2{1.2, 1.6};
  for (int i = 0; i < 20; ++i) {
    EXPECT_NEAR(projected_sq_norm(b, w2, 64), 4.0 * projected_sq_norm(a, w, 64), 1e-12);
  }
}

TEST(McReportTest, ThreadCountDoesNotChangeReport) {
  set_threads(1);
  const auto one = mc_block_distance_distortion(13, 300, 32, 16, 64, 0.2);
  set_threads(4);
  const auto four = mc_block_distance_distortion(13, 300, 32, 16, 64, 0.2);
  set_threads(0);
  EXPECT_EQ(format_report(one), format_report(four));
}

TEST(McReportTest, KeyValueFormat) {
  DistortionReport r;
  r.mode = "chi2-tail";
  r.trials = 10;
  r.violations = 1;
  r.violation_rate = 0.1;
  const std::string text = format_report(r);
  EXPECT_NE(text.find("mode=chi2-tail\n"), std::string::npos);
  EXPECT_NE(text.find("trials=10\n"), std::string::npos);
  EXPECT_NE(text.find("violation_rate=0.100000\n"), std::string::npos);
}

}  // namespace
}  // namespace aml
