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

#include "aml/jl.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "aml/error.h"

namespace aml {
namespace {

void check_bound_args(std::size_t m, std::size_t n, double sigma) {
  require(m >= 1 && n >= 1, ErrorCode::kInvalidArgument, "M and N must be >= 1");
  require(sigma > 0.0 && sigma < 1.0, ErrorCode::kInvalidArgument,
          "sigma must lie in (0, 1)");
}

void check_epsilon(double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, ErrorCode::kInvalidArgument,
          "epsilon must lie in (0, 1)");
}

void check_trials(std::size_t trials) {
  require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
}

// y = W^T x for W stored [x.size(), cols]; returns ||y||^2.
double transposed_sq_norm(const Tensor& w, std::span<const double> x,
                          std::vector<double>& scratch) {
  const std::size_t cols = w.cols();
  scratch.assign(cols, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xk = x[k];
    auto wk = w.row(k);
    for (std::size_t c = 0; c < cols; ++c) scratch[c] += xk * wk[c];
  }
  double sq = 0.0;
  for (double y : scratch) sq += y * y;
  return sq;
}

void transposed_apply(const Tensor& w, std::span<const double> x,
                      std::vector<double>& out) {
  const std::size_t cols = w.cols();
  out.assign(cols, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xk = x[k];
    auto wk = w.row(k);
    for (std::size_t c = 0; c < cols; ++c) out[c] += xk * wk[c];
  }
}

std::vector<double> random_unit(RngStream& rng, std::size_t dim) {
  std::vector<double> v(dim);
  double sq = 0.0;
  for (double& x : v) {
    x = rng.next_gaussian();
    sq += x * x;
  }
  const double norm = std::sqrt(sq);
  for (double& x : v) x /= norm;
  return v;
}

struct TrialResult {
  double statistic;
  double error;
  bool violation;
};

template <typename TrialFn>
DistortionReport run_trials(const char* mode, std::size_t trials, double epsilon,
                            TrialFn&& trial) {
  std::vector<TrialResult> results(trials);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
    results[t] = trial(static_cast<std::size_t>(t));
  }
  DistortionReport report;
  report.mode = mode;
  report.trials = trials;
  report.epsilon_target = epsilon;
  double abs_sum = 0.0;
  double stat_sum = 0.0;
  for (const TrialResult& r : results) {
    const double a = std::abs(r.error);
    abs_sum += a;
    stat_sum += r.statistic;
    report.max_abs_error = std::max(report.max_abs_error, a);
    if (r.violation) ++report.violations;
  }
  report.violation_rate =
      static_cast<double>(report.violations) / static_cast<double>(trials);
  report.mean_abs_error = abs_sum / static_cast<double>(trials);
  report.mean_statistic = stat_sum / static_cast<double>(trials);
  return report;
}

RngStream trial_stream(std::uint64_t seed, std::size_t trial) {
  return RngStream(seed, streams::kMonteCarloBase + trial);
}

}  // namespace

double jl_dim_bound_real(std::size_t m, std::size_t n, double sigma, double epsilon) {
  check_bound_args(m, n, sigma);
  check_epsilon(epsilon);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  return 8.0 * std::log(mn / sigma) / (epsilon * epsilon);
}

std::size_t jl_dim_bound(std::size_t m, std::size_t n, double sigma, double epsilon) {
  return static_cast<std::size_t>(std::ceil(jl_dim_bound_real(m, n, sigma, epsilon)));
}

double jl_epsilon(std::size_t d_a, std::size_t m, std::size_t n, double sigma) {
  check_bound_args(m, n, sigma);
  require(d_a >= 1, ErrorCode::kInvalidArgument, "D_a must be >= 1");
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  return std::sqrt(8.0 * std::log(mn / sigma) / static_cast<double>(d_a));
}

double chi2_tail_bound(std::size_t d, double epsilon) {
  require(d >= 1, ErrorCode::kInvalidArgument, "d must be >= 1");
  require(epsilon >= 0.0 && epsilon < 1.0, ErrorCode::kInvalidArgument,
          "epsilon must lie in [0, 1)");
  const double b = 2.0 * std::exp(-static_cast<double>(d) * epsilon * epsilon / 8.0);
  return std::min(b, 1.0);
}

std::string format_report(const DistortionReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "mode=%s\ntrials=%zu\nepsilon_target=%.6f\nviolations=%zu\n"
                "violation_rate=%.6f\nmax_abs_error=%.6f\nmean_abs_error=%.6f\n"
                "mean_statistic=%.6f\n",
                r.mode.c_str(), r.trials, r.epsilon_target, r.violations,
                r.violation_rate, r.max_abs_error, r.mean_abs_error, r.mean_statistic);
  return buf;
}

double block_projected_sq_distance(const ProjectionPair& proj,
                                   std::span<const double> v, std::span<const double> u,
                                   std::span<const double> v2,
                                   std::span<const double> u2) {
  require(v.size() == proj.d_image && v2.size() == proj.d_image &&
              u.size() == proj.d_text && u2.size() == proj.d_text,
          ErrorCode::kShapeMismatch, "block distance: vector dims do not match projection");
  std::vector<double> a(v.size()), b(u.size()), scratch;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = v[i] - v2[i];
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = u[i] - u2[i];
  const double image_part = transposed_sq_norm(proj.w_image, a, scratch);
  const double text_part = transposed_sq_norm(proj.w_text, b, scratch);
  return 0.5 * (image_part + text_part);
}

double block_distance_distortion(const ProjectionPair& proj,
                                 std::span<const double> v, std::span<const double> u,
                                 std::span<const double> v2,
                                 std::span<const double> u2) {
  double original = 0.0;
  for (std::size_t i = 0; i < v.size() && i < v2.size(); ++i)
    original += (v[i] - v2[i]) * (v[i] - v2[i]);
  for (std::size_t i = 0; i < u.size() && i < u2.size(); ++i)
    original += (u[i] - u2[i]) * (u[i] - u2[i]);
  const double projected = block_projected_sq_distance(proj, v, u, v2, u2);
  if (original == 0.0) return 0.0;
  return projected / (0.5 * original) - 1.0;
}

double cross_inner_error(const ProjectionPair& proj, std::span<const double> v,
                         std::span<const double> u) {
  require(v.size() == proj.d_image && u.size() == proj.d_text,
          ErrorCode::kShapeMismatch, "cross inner: vector dims do not match projection");
  std::vector<double> pv, pu;
  transposed_apply(proj.w_image, v, pv);
  transposed_apply(proj.w_text, u, pu);
  double projected = 0.0;
  for (std::size_t c = 0; c < pv.size(); ++c) projected += pv[c] * pu[c];
  double raw = 0.0;
  for (std::size_t i = 0; i < std::min(v.size(), u.size()); ++i) raw += v[i] * u[i];
  return projected - raw;
}

double projected_sq_norm(RngStream& rng, std::span<const double> w, std::size_t d) {
  require(d >= 1, ErrorCode::kInvalidArgument, "d must be >= 1");
  const double stddev = 1.0 / std::sqrt(static_cast<double>(d));
  double sq = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double xi = 0.0;
    for (double wl : w) xi += rng.next_gaussian(0.0, stddev) * wl;
    sq += xi * xi;
  }
  return sq;
}

DistortionReport mc_block_distance_distortion(std::uint64_t seed, std::size_t trials,
                                              std::size_t d_image, std::size_t d_text,
                                              std::size_t d_a, double epsilon) {
  check_trials(trials);
  check_epsilon(epsilon);
  const ProjectionPair proj = sample_projection(seed, d_image, d_text, d_a);
  return run_trials("block-distance", trials, epsilon, [&](std::size_t t) {
    RngStream rng = trial_stream(seed, t);
    const auto v = random_unit(rng, d_image);
    const auto u = random_unit(rng, d_text);
    const auto v2 = random_unit(rng, d_image);
    const auto u2 = random_unit(rng, d_text);
    const double distortion = block_distance_distortion(proj, v, u, v2, u2);
    return TrialResult{1.0 + distortion, distortion, std::abs(distortion) > epsilon};
  });
}

DistortionReport mc_cross_inner_error(std::uint64_t seed, std::size_t trials,
                                      std::size_t d_image, std::size_t d_text,
                                      std::size_t d_a, double epsilon) {
  check_trials(trials);
  require(epsilon > 0.0, ErrorCode::kInvalidArgument, "epsilon must be positive");
  const ProjectionPair proj = sample_projection(seed, d_image, d_text, d_a);
  return run_trials("cross-inner", trials, epsilon, [&](std::size_t t) {
    RngStream rng = trial_stream(seed, t);
    const auto v = random_unit(rng, d_image);
    const auto u = random_unit(rng, d_text);
    const double err = cross_inner_error(proj, v, u);
    return TrialResult{err, err, std::abs(err) > epsilon};
  });
}

DistortionReport mc_chi2_tail(std::uint64_t seed, std::size_t trials, std::size_t d,
                              double epsilon, std::size_t input_dim) {
  check_trials(trials);
  check_epsilon(epsilon);
  require(input_dim >= 1, ErrorCode::kInvalidArgument, "input_dim must be >= 1");
  const std::vector<double> w(input_dim, 1.0 / std::sqrt(static_cast<double>(input_dim)));
  double w_sq = 0.0;
  for (double x : w) w_sq += x * x;
  return run_trials("chi2-tail", trials, epsilon, [&](std::size_t t) {
    RngStream rng = trial_stream(seed, t);
    const double ratio = projected_sq_norm(rng, w, d) / w_sq;
    const double err = ratio - 1.0;
    return TrialResult{ratio, err, std::abs(err) >= epsilon};
  });
}

}  // namespace aml
