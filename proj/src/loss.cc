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

#include "aml/loss.h"

#include <cmath>

#include "aml/error.h"

namespace aml {
namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

void check_target(const PredictionPair& p, const MaskBitmap& y) {
  p.validate();
  require(p.m_pos.rows() == y.height() && p.m_pos.cols() == y.width(),
          ErrorCode::kShapeMismatch, "prediction and ground truth sizes differ");
}

}  // namespace

void PredictionPair::validate() const {
  require(m_pos.rank() == 2 && m_pos.shape() == m_neg.shape(), ErrorCode::kShapeMismatch,
          "m_pos and m_neg must be equal-shaped [H, W] maps");
  require(m_pos.all_finite() && m_neg.all_finite(), ErrorCode::kNonFinite,
          "prediction logits must be finite");
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double bce_from_logit(double x, bool y) { return y ? softplus(-x) : softplus(x); }

Tensor pixel_prob(const PredictionPair& p) {
  p.validate();
  Tensor out(p.m_pos.shape());
  auto pos = p.m_pos.data();
  auto neg = p.m_neg.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<float>(logistic(static_cast<double>(pos[i]) - neg[i]));
  }
  return out;
}

double seg_loss(const PredictionPair& p, const MaskBitmap& y) {
  check_target(p, y);
  auto pos = p.m_pos.data();
  auto neg = p.m_neg.data();
  auto bits = y.bits();
  double sum = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    sum += bce_from_logit(static_cast<double>(pos[i]) - neg[i], bits[i] != 0);
  }
  return sum / static_cast<double>(bits.size());
}

LossGradient seg_loss_grad(const PredictionPair& p, const MaskBitmap& y) {
  check_target(p, y);
  LossGradient g{Tensor(p.m_pos.shape()), Tensor(p.m_pos.shape())};
  auto pos = p.m_pos.data();
  auto neg = p.m_neg.data();
  auto bits = y.bits();
  auto dp = g.d_pos.data();
  auto dn = g.d_neg.data();
  const double inv_n = 1.0 / static_cast<double>(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double prob = logistic(static_cast<double>(pos[i]) - neg[i]);
    const double d = (prob - (bits[i] != 0 ? 1.0 : 0.0)) * inv_n;
    dp[i] = static_cast<float>(d);
    dn[i] = static_cast<float>(-d);
  }
  return g;
}

}  // namespace aml
