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

#include "aml/afm.h"

#include <algorithm>
#include <string>

#include "aml/bilinear.h"
#include "aml/error.h"
#include "aml/rng.h"

namespace aml {

void AmlConfig::validate() const {
  require(tau >= 0.0 && tau < 1.0, ErrorCode::kInvalidArgument, "tau must lie in [0, 1)");
  require(rho >= 0.0 && rho <= 1.0, ErrorCode::kInvalidArgument, "rho must lie in [0, 1]");
  require(block_h >= 1 && block_w >= 1, ErrorCode::kInvalidArgument,
          "block size must be positive");
  require(d_a >= 1, ErrorCode::kInvalidArgument, "d_a must be positive");
  require(grid_h >= 1 && grid_w >= 1, ErrorCode::kInvalidArgument,
          "patch grid must be positive");
}

BlockMask::BlockMask(std::size_t image_h, std::size_t image_w, std::size_t block_h,
                     std::size_t block_w)
    : image_h_(image_h), image_w_(image_w), block_h_(block_h), block_w_(block_w) {
  require(image_h > 0 && image_w > 0 && block_h > 0 && block_w > 0,
          ErrorCode::kInvalidArgument, "block mask dimensions must be positive");
  rows_ = (image_h + block_h - 1) / block_h;
  cols_ = (image_w + block_w - 1) / block_w;
  bits_.assign(rows_ * cols_, 0);
}

std::size_t BlockMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

double BlockMask::masked_fraction() const {
  return bits_.empty() ? 0.0
                       : static_cast<double>(count()) / static_cast<double>(bits_.size());
}

std::size_t BlockMask::row_end(std::size_t p) const {
  return std::min((p + 1) * block_h_, image_h_);
}

std::size_t BlockMask::col_end(std::size_t q) const {
  return std::min((q + 1) * block_w_, image_w_);
}

MaskBitmap BlockMask::to_bitmap() const { return MaskBitmap(cols_, rows_, bits_); }

Tensor bilinear_upsample(const SimilarityMap& s, std::size_t height, std::size_t width) {
  require(height >= s.grid_h() && width >= s.grid_w(), ErrorCode::kInvalidArgument,
          "bilinear_upsample: target " + std::to_string(height) + "x" +
              std::to_string(width) + " is smaller than the patch grid");
  Tensor out = Tensor::matrix(height, width);
  const auto rows = bilinear_taps(s.grid_h(), height);
  const auto cols = bilinear_taps(s.grid_w(), width);
  bilinear_resize<float, float>(s.grid().data(), s.grid_h(), s.grid_w(), out.data(),
                                height, width, rows, cols);
  return out;
}

PixelSet weak_pixels(const Tensor& pixel_scores, double tau) {
  const std::size_t h = pixel_scores.rows();
  const std::size_t w = pixel_scores.cols();
  PixelSet out;
  for (std::size_t r = 0; r < h; ++r) {
    auto row = pixel_scores.row(r);
    for (std::size_t c = 0; c < w; ++c) {
      if (static_cast<double>(row[c]) < tau) out.push_back({r, c});
    }
  }
  return out;
}

PixelSet dropout_select(const PixelSet& weak, double rho, std::uint64_t seed) {
  require(rho >= 0.0 && rho <= 1.0, ErrorCode::kInvalidArgument, "rho must lie in [0, 1]");
  RngStream rng(seed, streams::kDropout);
  const double keep = 1.0 - rho;
  PixelSet out;
  out.reserve(static_cast<std::size_t>(static_cast<double>(weak.size()) * keep) + 1);
  for (const Pixel& p : weak) {
    if (rng.next_uniform() < keep) out.push_back(p);
  }
  return out;
}

BlockMask block_aggregate(const PixelSet& selected, std::size_t height, std::size_t width,
                          std::size_t block_h, std::size_t block_w) {
  BlockMask mask(height, width, block_h, block_w);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const Pixel& p = selected[i];
    if (p.row >= height || p.col >= width) {
      fail(ErrorCode::kInvalidArgument, "block_aggregate: pixel (" + std::to_string(p.row) +
                                            ", " + std::to_string(p.col) + ") out of bounds");
    }
    require(i == 0 || selected[i - 1] < p, ErrorCode::kInvalidArgument,
            "block_aggregate: pixel set is not in canonical order");
  }
  // Selected pixels are sorted by row, so each block row owns a contiguous
  // slice and rows can be filled independently.
  const auto rows = static_cast<std::ptrdiff_t>(mask.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t bp = 0; bp < rows; ++bp) {
    const std::size_t p = static_cast<std::size_t>(bp);
    auto first = std::lower_bound(selected.begin(), selected.end(),
                                  Pixel{mask.row_begin(p), 0});
    auto last = std::lower_bound(first, selected.end(), Pixel{mask.row_end(p), 0});
    for (auto it = first; it != last; ++it) mask.set(p, it->col / block_w, true);
  }
  return mask;
}

ImageRGB apply_mask(const ImageRGB& image, const BlockMask& mask) {
  require(mask.image_h() == image.height() && mask.image_w() == image.width(),
          ErrorCode::kShapeMismatch, "apply_mask: mask does not cover the image");
  ImageRGB out = image;
  auto px = out.pixels();
  const std::size_t width = image.width();
  const auto rows = static_cast<std::ptrdiff_t>(mask.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t bp = 0; bp < rows; ++bp) {
    const std::size_t p = static_cast<std::size_t>(bp);
    for (std::size_t q = 0; q < mask.cols(); ++q) {
      if (!mask.at(p, q)) continue;
      for (std::size_t r = mask.row_begin(p); r < mask.row_end(p); ++r) {
        auto begin = px.begin() + 3 * (r * width + mask.col_begin(q));
        std::fill(begin, begin + 3 * (mask.col_end(q) - mask.col_begin(q)), 0);
      }
    }
  }
  return out;
}

AfmResult afm(const SimilarityMap& s, const ImageRGB& image, const AmlConfig& cfg) {
  cfg.validate();
  const Tensor pixel_scores = bilinear_upsample(s, image.height(), image.width());
  const PixelSet weak = weak_pixels(pixel_scores, cfg.tau);
  const PixelSet selected = dropout_select(weak, cfg.rho, cfg.seed);
  BlockMask mask =
      block_aggregate(selected, image.height(), image.width(), cfg.block_h, cfg.block_w);
  ImageRGB masked = apply_mask(image, mask);
  return AfmResult{std::move(masked), std::move(mask)};
}

}  // namespace aml
