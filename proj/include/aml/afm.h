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

#ifndef AML_AFM_H_
#define AML_AFM_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "aml/image.h"
#include "aml/pmme.h"
#include "aml/tensor.h"

namespace aml {

struct AmlConfig {
  double tau = 0.4;    // weak-alignment threshold, in [0, 1)
  double rho = 0.25;   // fraction of weak pixels dropped, in [0, 1]
  std::size_t block_h = 32;
  std::size_t block_w = 32;
  std::size_t d_a = 2048;
  std::size_t grid_h = 14;
  std::size_t grid_w = 14;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Pixel {
  std::size_t row;
  std::size_t col;
  friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

// Pixel coordinates in strictly increasing (row, col) order.
using PixelSet = std::vector<Pixel>;

// Block grid covering an image with ceil division; edge blocks are clipped.
// A set bit means the block is zeroed.
class BlockMask {
 public:
  BlockMask() = default;
  BlockMask(std::size_t image_h, std::size_t image_w, std::size_t block_h,
            std::size_t block_w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t block_h() const { return block_h_; }
  std::size_t block_w() const { return block_w_; }
  std::size_t image_h() const { return image_h_; }
  std::size_t image_w() const { return image_w_; }

  bool at(std::size_t p, std::size_t q) const { return bits_[p * cols_ + q] != 0; }
  void set(std::size_t p, std::size_t q, bool v) { bits_[p * cols_ + q] = v ? 1 : 0; }

  std::size_t count() const;
  double masked_fraction() const;

  // Pixel range [row_begin, row_end) x [col_begin, col_end) of block (p, q).
  std::size_t row_begin(std::size_t p) const { return p * block_h_; }
  std::size_t row_end(std::size_t p) const;
  std::size_t col_begin(std::size_t q) const { return q * block_w_; }
  std::size_t col_end(std::size_t q) const;

  // One mask pixel per block.
  MaskBitmap to_bitmap() const;

  friend bool operator==(const BlockMask&, const BlockMask&) = default;

 private:
  std::size_t image_h_ = 0;
  std::size_t image_w_ = 0;
  std::size_t block_h_ = 0;
  std::size_t block_w_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Upsamples S to [height, width] with half-pixel centres.
Tensor bilinear_upsample(const SimilarityMap& s, std::size_t height, std::size_t width);

// Pixels with value strictly below tau.
PixelSet weak_pixels(const Tensor& pixel_scores, double tau);

// Keeps each pixel independently with probability 1 - rho, one uniform draw
// per input pixel from the dropout stream of `seed`, in canonical order.
PixelSet dropout_select(const PixelSet& weak, double rho, std::uint64_t seed);

// Any selected pixel inside a block marks the whole block.
BlockMask block_aggregate(const PixelSet& selected, std::size_t height, std::size_t width,
                          std::size_t block_h, std::size_t block_w);

// Zeroes every pixel of each marked block.
ImageRGB apply_mask(const ImageRGB& image, const BlockMask& mask);

struct AfmResult {
  ImageRGB masked;
  BlockMask mask;
};

AfmResult afm(const SimilarityMap& s, const ImageRGB& image, const AmlConfig& cfg);

}  // namespace aml

#endif  // AML_AFM_H_
