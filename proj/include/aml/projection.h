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

#ifndef AML_PROJECTION_H_
#define AML_PROJECTION_H_

#include <cstddef>
#include <cstdint>

#include "aml/tensor.h"

namespace aml {

// Fixed Gaussian maps into the shared D_a-dimensional space. Matrices are
// stored input-major ([D_in, D_a]) and applied as rows * W.
struct ProjectionPair {
  Tensor w_image;  // [d_image, d_a]
  Tensor w_text;   // [d_text, d_a]
  std::size_t d_image = 0;
  std::size_t d_text = 0;
  std::size_t d_a = 0;
  std::uint64_t seed = 0;
};

// Entries i.i.d. N(0, 1/d_a), drawn from the projection stream: all of
// w_image in row-major order, then all of w_text.
ProjectionPair sample_projection(std::uint64_t seed, std::size_t d_image,
                                 std::size_t d_text, std::size_t d_a);

// Rows with Euclidean norm below this are returned as zeros.
inline constexpr double kZeroNormEpsilon = 1e-12;

Tensor l2_normalize_rows(const Tensor& m);

// [R, D] x [D, D_a] -> [R, D_a]. Rows are distributed across threads; every
// output element accumulates in f64 over the inner index in ascending order.
Tensor project(const Tensor& normed, const Tensor& w);

}  // namespace aml

#endif  // AML_PROJECTION_H_
