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

#ifndef AML_PMME_H_
#define AML_PMME_H_

#include <cstddef>

#include "aml/projection.h"
#include "aml/tensor.h"

namespace aml {

// Per-patch alignment heatmap: for each patch, the largest softmax weight it
// assigns to any token. Values lie in [1/N_l, 1].
class SimilarityMap {
 public:
  SimilarityMap() = default;
  // grid must be a [grid_h, grid_w] tensor.
  explicit SimilarityMap(Tensor grid);

  std::size_t grid_h() const { return grid_.dim(0); }
  std::size_t grid_w() const { return grid_.dim(1); }
  float at(std::size_t i, std::size_t j) const { return grid_(i, j); }
  const Tensor& grid() const { return grid_; }

  double mean() const;

 private:
  Tensor grid_;
};

// [P, D_a] x [N_l, D_a]^T -> [P, N_l].
Tensor similarity_logits(const Tensor& visual, const Tensor& text);

// Max-subtracted softmax along each row.
Tensor row_softmax(const Tensor& logits);

// Patch p = i * grid_w + j takes the max over row p.
SimilarityMap patch_max(const Tensor& probs, std::size_t grid_h, std::size_t grid_w);

// visual: [grid_h * grid_w, D_i] deepest-scale patch features.
// text:   [N_l, D_t] token features; every row participates in the softmax.
SimilarityMap pmme(const Tensor& visual, const Tensor& text, const ProjectionPair& proj,
                   std::size_t grid_h, std::size_t grid_w);

}  // namespace aml

#endif  // AML_PMME_H_
