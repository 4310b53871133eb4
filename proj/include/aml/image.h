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

#ifndef AML_IMAGE_H_
#define AML_IMAGE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aml {

using Rgb = std::array<std::uint8_t, 3>;

// 8-bit interleaved RGB image, row-major.
class ImageRGB {
 public:
  ImageRGB() = default;
  ImageRGB(std::size_t width, std::size_t height, Rgb fill = {0, 0, 0});
  ImageRGB(std::size_t width, std::size_t height,
           std::vector<std::uint8_t> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  Rgb at(std::size_t row, std::size_t col) const {
    const std::size_t i = 3 * (row * width_ + col);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(std::size_t row, std::size_t col, Rgb value) {
    const std::size_t i = 3 * (row * width_ + col);
    pixels_[i] = value[0];
    pixels_[i + 1] = value[1];
    pixels_[i + 2] = value[2];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  friend bool operator==(const ImageRGB&, const ImageRGB&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Binary mask, one {0,1} byte per pixel.
class MaskBitmap {
 public:
  MaskBitmap() = default;
  MaskBitmap(std::size_t width, std::size_t height);
  MaskBitmap(std::size_t width, std::size_t height,
             std::vector<std::uint8_t> bits);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  bool at(std::size_t row, std::size_t col) const {
    return bits_[row * width_ + col] != 0;
  }
  void set(std::size_t row, std::size_t col, bool value) {
    bits_[row * width_ + col] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t count() const;

  friend bool operator==(const MaskBitmap&, const MaskBitmap&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace aml

#endif  // AML_IMAGE_H_
