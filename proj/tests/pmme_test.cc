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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aml/error.h"
#include "aml/pmme.h"
#include "oracles.h"

namespace aml {
namespace {

TEST(SimilarityLogitsTest, SelfDotIsSquaredNorm) {
  const Tensor v({1, 3}, {0.5f, -1.0f, 2.0f});
  const Tensor out = similarity_logits(v, v);
  EXPECT_FLOAT_EQ(out(0, 0), 5.25f);
}

TEST(SimilarityLogitsTest, OrthogonalRowsGiveZero) {
  const Tensor v({1, 2}, {1.0f, 0.0f});
  const Tensor t({1, 2}, {0.0f, 3.0f});
  EXPECT_EQ(similarity_logits(v, t)(0, 0), 0.0f);
}

TEST(SimilarityLogitsTest, MatchesDoubleLoop) {
  const Tensor v = oracle::random_matrix(1, 6, 10);
  const Tensor t = oracle::random_matrix(2, 4, 10);
  const Tensor out = similarity_logits(v, t);
  for (std::size_t m = 0; m < 6; ++m)
    for (std::size_t n = 0; n < 4; ++n) {
      double dot = 0.0;
      for (std::size_t k = 0; k < 10; ++k) dot += static_cast<double>(v(m, k)) * t(n, k);
      EXPECT_NEAR(out(m, n), dot, 1e-5);
    }
}

TEST(SimilarityLogitsTest, DimensionMismatch) {
  EXPECT_THROW(similarity_logits(Tensor::matrix(2, 3), Tensor::matrix(2, 4)), Error);
}

TEST(RowSoftmaxTest, EqualLogitsSplitEvenly) {
  const Tensor out = row_softmax(Tensor({1, 2}, {0.0f, 0.0f}));
  EXPECT_FLOAT_EQ(out(0, 0), 0.5f);
  EXPECT_FLOAT_EQ(out(0, 1), 0.5f);
}

TEST(RowSoftmaxTest, LargeLogitsDoNotOverflow) {
  const float a = 1000.0f;
  const float b = 1000.0f + static_cast<float>(std::log(3.0));
  const Tensor out = row_softmax(Tensor({1, 2}, {a, b}));
  // The f32 logit difference is log 3 up to f32 spacing near 1000 (6e-5).
  EXPECT_NEAR(out(0, 0), 0.25, 2e-5);
  EXPECT_NEAR(out(0, 1), 0.75, 2e-5);
}

TEST(RowSoftmaxTest, RowsSumToOne) {
  const Tensor out = row_softmax(oracle::random_matrix(4, 30, 17, 5.0));
  for (std::size_t r = 0; r < 30; ++r) {
    double s = 0.0;
    for (float v : out.row(r)) s += v;
    EXPECT_NEAR(s, 1.0, 1e-6);
  }
}

TEST(PatchMaxTest, SingleTokenIsOne) {
  const SimilarityMap s = patch_max(row_softmax(oracle::random_matrix(5, 6, 1)), 2, 3);
  for (float v : s.grid().data()) EXPECT_EQ(v, 1.0f);
}

TEST(PatchMaxTest, AnalyticRow) {
  const Tensor probs = row_softmax(Tensor({1, 2}, {0.0f, static_cast<float>(std::log(3.0))}));
  EXPECT_NEAR(patch_max(probs, 1, 1).at(0, 0), 0.75, 1e-6);
}

TEST(PatchMaxTest, MatchesBruteForceLoopRowMajor) {
  const Tensor probs = row_softmax(oracle::random_matrix(6, 4, 5));
  const SimilarityMap s = patch_max(probs, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      float best = 0.0f;
      for (std::size_t k = 0; k < 5; ++k) best = std::max(best, probs(i * 2 + j, k));
      EXPECT_EQ(s.at(i, j), best);
    }
}

TEST(PatchMaxTest, ShapeMismatch) {
  EXPECT_THROW(patch_max(Tensor::matrix(5, 2), 2, 2), Error);
}

class PmmeFixture : public ::testing::Test {
 protected:
  static constexpr std::size_t kGrid = 14, kTokens = 20, kDi = 512, kDt = 256, kDa = 2048;
  void SetUp() override {
    visual_ = oracle::random_matrix(100, kGrid * kGrid, kDi);
    text_ = oracle::random_matrix(101, kTokens, kDt);
    proj_ = sample_projection(7, kDi, kDt, kDa);
  }
  Tensor visual_, text_;
  ProjectionPair proj_;
};

TEST_F(PmmeFixture, MatchesStepByStepComposition) {
  const SimilarityMap s = pmme(visual_, text_, proj_, kGrid, kGrid);
  const Tensor v = project(l2_normalize_rows(visual_), proj_.w_image);
  const Tensor t = project(l2_normalize_rows(text_), proj_.w_text);
  const SimilarityMap steps = patch_max(row_softmax(similarity_logits(v, t)), kGrid, kGrid);
  EXPECT_TRUE(s.grid() == steps.grid());
  const auto naive = oracle::naive_pmme(visual_, text_, proj_.w_image, proj_.w_text);
  for (std::size_t p = 0; p < naive.size(); ++p) {
    EXPECT_NEAR(s.grid().data()[p], naive[p], 1e-5);
  }
}

TEST_F(PmmeFixture, ValuesBetweenUniformAndOne) {
  const SimilarityMap s = pmme(visual_, text_, proj_, kGrid, kGrid);
  for (float v : s.grid().data()) {
    EXPECT_GE(v, 1.0f / kTokens - 1e-7f);
    EXPECT_LE(v, 1.0f);
  }
}

TEST_F(PmmeFixture, TokenOrderDoesNotMatter) {
  std::vector<std::size_t> order(kTokens);
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::swap(order[3], order[11]);
  Tensor shuffled = Tensor::matrix(kTokens, kDt);
  for (std::size_t r = 0; r < kTokens; ++r)
    std::copy(text_.row(order[r]).begin(), text_.row(order[r]).end(), shuffled.row(r).begin());
  const SimilarityMap a = pmme(visual_, text_, proj_, kGrid, kGrid);
  const SimilarityMap b = pmme(visual_, shuffled, proj_, kGrid, kGrid);
  EXPECT_TRUE(a.grid() == b.grid());
}

TEST_F(PmmeFixture, PositiveRowScalingDoesNotMatter) {
  Tensor scaled = visual_;
  for (float& v : scaled.row(5)) v *= 4.0f;   // exact in binary
  for (float& v : scaled.row(9)) v *= 3.7f;
  const SimilarityMap a = pmme(visual_, text_, proj_, kGrid, kGrid);
  const SimilarityMap b = pmme(scaled, text_, proj_, kGrid, kGrid);
  EXPECT_EQ(a.grid().data()[5], b.grid().data()[5]);
  EXPECT_NEAR(a.grid().data()[9], b.grid().data()[9], 1e-6);
}

TEST_F(PmmeFixture, Deterministic) {
  EXPECT_TRUE(pmme(visual_, text_, proj_, kGrid, kGrid).grid() ==
              pmme(visual_, text_, proj_, kGrid, kGrid).grid());
}

TEST(PmmeTest, SingleTokenGivesAllOnes) {
  const auto proj = sample_projection(2, 8, 4, 16);
  const SimilarityMap s =
      pmme(oracle::random_matrix(1, 6, 8), oracle::random_matrix(2, 1, 4), proj, 2, 3);
  for (float v : s.grid().data()) EXPECT_EQ(v, 1.0f);
}

TEST(PmmeTest, RejectsInconsistentDims) {
  const auto proj = sample_projection(2, 8, 4, 16);
  EXPECT_THROW(pmme(Tensor::matrix(6, 8), Tensor::matrix(2, 4), proj, 2, 2), Error);
  EXPECT_THROW(pmme(Tensor::matrix(4, 7), Tensor::matrix(2, 4), proj, 2, 2), Error);
  EXPECT_THROW(pmme(Tensor::matrix(4, 8), Tensor::matrix(2, 5), proj, 2, 2), Error);
}

}  // namespace
}  // namespace aml
