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

#include "aml/projection.h"

#include <cmath>
#include <string>
#include <vector>

#include "aml/error.h"
#include "aml/rng.h"

namespace aml {
namespace {

void fill_gaussian(Tensor& t, RngStream& rng, double stddev) {
  for (float& v : t.data()) v = static_cast<float>(rng.next_gaussian(0.0, stddev));
}

}  // namespace

ProjectionPair sample_projection(std::uint64_t seed, std::size_t d_image,
                                 std::size_t d_text, std::size_t d_a) {
  require(d_image >= 1 && d_text >= 1 && d_a >= 1, ErrorCode::kInvalidArgument,
          "projection dimensions must be >= 1");
  ProjectionPair p;
  p.d_image = d_image;
  p.d_text = d_text;
  p.d_a = d_a;
  p.seed = seed;
  p.w_image = Tensor::matrix(d_image, d_a);
  p.w_text = Tensor::matrix(d_text, d_a);
  RngStream rng(seed, streams::kProjection);
  const double stddev = 1.0 / std::sqrt(static_cast<double>(d_a));
  fill_gaussian(p.w_image, rng, stddev);
  fill_gaussian(p.w_text, rng, stddev);
  return p;
}

Tensor l2_normalize_rows(const Tensor& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Tensor out = Tensor::matrix(rows, cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
    auto src = m.row(r);
    double sq = 0.0;
    for (float v : src) sq += static_cast<double>(v) * v;
    const double norm = std::sqrt(sq);
    if (norm < kZeroNormEpsilon) continue;
    auto dst = out.row(r);
    for (std::size_t c = 0; c < cols; ++c) {
      dst[c] = static_cast<float>(src[c] / norm);
    }
  }
  return out;
}

Tensor project(const Tensor& normed, const Tensor& w) {
  require(normed.cols() == w.rows(), ErrorCode::kShapeMismatch,
          "project: inner dims differ (" + std::to_string(normed.cols()) + " vs " +
              std::to_string(w.rows()) + ")");
  const std::size_t rows = normed.rows();
  const std::size_t inner = w.rows();
  const std::size_t out_dim = w.cols();
  Tensor out = Tensor::matrix(rows, out_dim);
#pragma omp parallel
  {
    std::vector<double> acc(out_dim);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
      std::fill(acc.begin(), acc.end(), 0.0);
      auto x = normed.row(r);
      for (std::size_t k = 0; k < inner; ++k) {
        const double xk = x[k];
        if (xk == 0.0) continue;
        auto wk = w.row(k);
        for (std::size_t c = 0; c < out_dim; ++c) acc[c] += xk * wk[c];
      }
      auto dst = out.row(r);
      for (std::size_t c = 0; c < out_dim; ++c) dst[c] = static_cast<float>(acc[c]);
    }
  }
  return out;
}

}  // namespace aml
