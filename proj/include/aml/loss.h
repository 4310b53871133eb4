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

#ifndef AML_LOSS_H_
#define AML_LOSS_H_

#include "aml/image.h"
#include "aml/tensor.h"

namespace aml {

// Per-pixel positive / negative region logits, both [H, W].
struct PredictionPair {
  Tensor m_pos;
  Tensor m_neg;

  void validate() const;
};

// P = exp(m_pos) / (exp(m_pos) + exp(m_neg)), evaluated as
// logistic(m_pos - m_neg).
Tensor pixel_prob(const PredictionPair& p);

// Mean binary cross-entropy of P against y over all H*W pixels, computed in
// log space from the logit difference.
double seg_loss(const PredictionPair& p, const MaskBitmap& y);

struct LossGradient {
  Tensor d_pos;  // (P - y) / HW
  Tensor d_neg;  // (y - P) / HW
};

LossGradient seg_loss_grad(const PredictionPair& p, const MaskBitmap& y);

// Scalar helpers shared with the toy head, which works in f64 throughout.
double logistic(double x);
// -log(sigmoid(x)) for y = 1, -log(1 - sigmoid(x)) for y = 0.
double bce_from_logit(double x, bool y);

}  // namespace aml

#endif  // AML_LOSS_H_
