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

#include "aml/image.h"

#include <algorithm>

#include "aml/error.h"

namespace aml {

ImageRGB::ImageRGB(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height) {
  require(width > 0 && height > 0, ErrorCode::kInvalidArgument,
          "image dimensions must be positive");
  pixels_.resize(3 * width * height);
  for (std::size_t i = 0; i < width * height; ++i) {
    std::copy(fill.begin(), fill.end(), pixels_.begin() + 3 * i);
  }
}

ImageRGB::ImageRGB(std::size_t width, std::size_t height,
                   std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  require(width > 0 && height > 0, ErrorCode::kInvalidArgument,
          "image dimensions must be positive");
  require(pixels_.size() == 3 * width * height, ErrorCode::kShapeMismatch,
          "pixel buffer length must be 3*width*height");
}

MaskBitmap::MaskBitmap(std::size_t width, std::size_t height)
    : width_(width), height_(height), bits_(width * height, 0) {
  require(width > 0 && height > 0, ErrorCode::kInvalidArgument,
          "mask dimensions must be positive");
}

MaskBitmap::MaskBitmap(std::size_t width, std::size_t height,
                       std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  require(width > 0 && height > 0, ErrorCode::kInvalidArgument,
          "mask dimensions must be positive");
  require(bits_.size() == width * height, ErrorCode::kShapeMismatch,
          "mask length must be width*height");
  for (std::uint8_t b : bits_) {
    require(b <= 1, ErrorCode::kNotBinary, "mask not binary");
  }
}

std::size_t MaskBitmap::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

}  // namespace aml
