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

#include "aml/pmme.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "aml/error.h"

namespace aml {

SimilarityMap::SimilarityMap(Tensor grid) : grid_(std::move(grid)) {
  require(grid_.rank() == 2, ErrorCode::kShapeMismatch,
          "similarity map must be a [H_f, W_f] tensor");
}

double SimilarityMap::mean() const {
  double sum = 0.0;
  for (float v : grid_.data()) sum += v;
  return grid_.empty() ? 0.0 : sum / static_cast<double>(grid_.size());
}

Tensor similarity_logits(const Tensor& visual, const Tensor& text) {
  require(visual.cols() == text.cols(), ErrorCode::kShapeMismatch,
          "similarity_logits: embedding dims differ (" + std::to_string(visual.cols()) +
              " vs " + std::to_string(text.cols()) + ")");
  const std::size_t patches = visual.rows();
  const std::size_t tokens = text.rows();
  const std::size_t dim = visual.cols();
  Tensor out = Tensor::matrix(patches, tokens);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < static_cast<std::ptrdiff_t>(patches); ++m) {
    auto v = visual.row(m);
    for (std::size_t n = 0; n < tokens; ++n) {
      auto t = text.row(n);
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += static_cast<double>(v[k]) * t[k];
      out(m, n) = static_cast<float>(acc);
    }
  }
  return out;
}

Tensor row_softmax(const Tensor& logits) {
  const std::size_t rows = logits.rows();
  const std::size_t cols = logits.cols();
  Tensor out = Tensor::matrix(rows, cols);
#pragma omp parallel
  {
    std::vector<double> e(cols);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
      auto x = logits.row(r);
      const float peak = *std::max_element(x.begin(), x.end());
      double sum = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        e[c] = std::exp(static_cast<double>(x[c]) - peak);
        sum += e[c];
      }
      auto dst = out.row(r);
      for (std::size_t c = 0; c < cols; ++c) dst[c] = static_cast<float>(e[c] / sum);
    }
  }
  return out;
}

SimilarityMap patch_max(const Tensor& probs, std::size_t grid_h, std::size_t grid_w) {
  require(probs.rank() == 2 && probs.rows() == grid_h * grid_w, ErrorCode::kShapeMismatch,
          "patch_max: row count must equal grid_h * grid_w");
  Tensor grid = Tensor::matrix(grid_h, grid_w);
  auto dst = grid.data();
  for (std::size_t p = 0; p < probs.rows(); ++p) {
    auto row = probs.row(p);
    dst[p] = *std::max_element(row.begin(), row.end());
  }
  return SimilarityMap(std::move(grid));
}

SimilarityMap pmme(const Tensor& visual, const Tensor& text, const ProjectionPair& proj,
                   std::size_t grid_h, std::size_t grid_w) {
  require(visual.rank() == 2 && text.rank() == 2, ErrorCode::kShapeMismatch,
          "pmme: features must be matrices");
  require(visual.rows() == grid_h * grid_w, ErrorCode::kShapeMismatch,
          "pmme: visual rows must equal grid_h * grid_w");
  require(visual.cols() == proj.d_image && text.cols() == proj.d_text,
          ErrorCode::kShapeMismatch, "pmme: feature dims do not match the projection");
  const Tensor v = project(l2_normalize_rows(visual), proj.w_image);
  const Tensor t = project(l2_normalize_rows(text), proj.w_text);
  return patch_max(row_softmax(similarity_logits(v, t)), grid_h, grid_w);
}

}  // namespace aml
