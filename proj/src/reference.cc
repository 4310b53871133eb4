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

#include "aml/reference.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aml/bilinear.h"
#include "aml/error.h"
#include "aml/projection.h"

namespace aml::reference {

Tensor l2_normalize_rows(const Tensor& m) {
  Tensor out = Tensor::matrix(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sq = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) sq += static_cast<double>(m(r, c)) * m(r, c);
    const double norm = std::sqrt(sq);
    if (norm < kZeroNormEpsilon) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = static_cast<float>(m(r, c) / norm);
  }
  return out;
}

Tensor project(const Tensor& normed, const Tensor& w) {
  require(normed.cols() == w.rows(), ErrorCode::kShapeMismatch, "project: inner dims differ");
  const std::size_t rows = normed.rows(), inner = w.rows(), cols = w.cols();
  Tensor out = Tensor::matrix(rows, cols);
  std::vector<double> acc(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t k = 0; k < inner; ++k) {
      const double xk = normed(r, k);
      for (std::size_t c = 0; c < cols; ++c) acc[c] += xk * w(k, c);
    }
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = static_cast<float>(acc[c]);
  }
  return out;
}

Tensor similarity_logits(const Tensor& visual, const Tensor& text) {
  require(visual.cols() == text.cols(), ErrorCode::kShapeMismatch,
          "similarity_logits: embedding dims differ");
  const std::size_t patches = visual.rows(), tokens = text.rows(), dim = visual.cols();
  Tensor out = Tensor::matrix(patches, tokens);
  for (std::size_t m = 0; m < patches; ++m) {
    for (std::size_t n = 0; n < tokens; ++n) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k)
        acc += static_cast<double>(visual(m, k)) * text(n, k);
      out(m, n) = static_cast<float>(acc);
    }
  }
  return out;
}

Tensor row_softmax(const Tensor& logits) {
  Tensor out = Tensor::matrix(logits.rows(), logits.cols());
  std::vector<double> e(logits.cols());
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    float peak = logits(r, 0);
    for (std::size_t c = 1; c < logits.cols(); ++c) peak = std::max(peak, logits(r, c));
    double sum = 0.0;
    for (std::size_t c = 0; c < logits.cols(); ++c) {
      e[c] = std::exp(static_cast<double>(logits(r, c)) - peak);
      sum += e[c];
    }
    for (std::size_t c = 0; c < logits.cols(); ++c) out(r, c) = static_cast<float>(e[c] / sum);
  }
  return out;
}

Tensor bilinear_upsample(const SimilarityMap& s, std::size_t height, std::size_t width) {
  require(height >= s.grid_h() && width >= s.grid_w(), ErrorCode::kInvalidArgument,
          "bilinear_upsample: target smaller than grid");
  const auto rows = bilinear_taps(s.grid_h(), height);
  const auto cols = bilinear_taps(s.grid_w(), width);
  Tensor out = Tensor::matrix(height, width);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const AxisTap ry = rows[y];
      const AxisTap cx = cols[x];
      const double t = (1.0 - cx.frac) * s.at(ry.lo, cx.lo) + cx.frac * s.at(ry.lo, cx.hi);
      const double b = (1.0 - cx.frac) * s.at(ry.hi, cx.lo) + cx.frac * s.at(ry.hi, cx.hi);
      out(y, x) = static_cast<float>((1.0 - ry.frac) * t + ry.frac * b);
    }
  }
  return out;
}

BlockMask block_aggregate(const PixelSet& selected, std::size_t height, std::size_t width,
                          std::size_t block_h, std::size_t block_w) {
  BlockMask mask(height, width, block_h, block_w);
  for (const Pixel& p : selected) {
    require(p.row < height && p.col < width, ErrorCode::kInvalidArgument,
            "block_aggregate: pixel out of bounds");
    mask.set(p.row / block_h, p.col / block_w, true);
  }
  return mask;
}

}  // namespace aml::reference
