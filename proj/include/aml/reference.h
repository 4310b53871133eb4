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

#ifndef AML_REFERENCE_H_
#define AML_REFERENCE_H_

// Single-threaded versions of the OpenMP kernels. They follow the same
// per-element accumulation order, so results must match bit for bit; the
// test suite checks this and the benchmark measures the speedup.

#include <cstddef>

#include "aml/afm.h"
#include "aml/pmme.h"
#include "aml/tensor.h"

namespace aml::reference {

Tensor l2_normalize_rows(const Tensor& m);
Tensor project(const Tensor& normed, const Tensor& w);
Tensor similarity_logits(const Tensor& visual, const Tensor& text);
Tensor row_softmax(const Tensor& logits);
Tensor bilinear_upsample(const SimilarityMap& s, std::size_t height, std::size_t width);
BlockMask block_aggregate(const PixelSet& selected, std::size_t height, std::size_t width,
                          std::size_t block_h, std::size_t block_w);

}  // namespace aml::reference

#endif  // AML_REFERENCE_H_
