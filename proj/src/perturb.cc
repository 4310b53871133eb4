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

#include "aml/perturb.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "aml/error.h"
#include "aml/rng.h"

namespace aml {
namespace {

constexpr std::array<std::string_view, 7> kNames = {
    "haze", "highlight", "lowlight", "contrast", "occlusion_box", "patch_masking",
    "color_jitter"};

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

template <typename Fn>
ImageRGB map_channels(const ImageRGB& image, Fn fn) {
  ImageRGB out = image;
  for (std::uint8_t& c : out.pixels()) c = to_byte(fn(static_cast<double>(c)));
  return out;
}

void fill_rect(ImageRGB& image, std::size_t top, std::size_t left, std::size_t h,
               std::size_t w, Rgb value) {
  for (std::size_t r = top; r < top + h; ++r) {
    for (std::size_t c = left; c < left + w; ++c) image.set(r, c, value);
  }
}

void require_box_size(const ImageRGB& image) {
  require(image.width() >= 5 && image.height() >= 5, ErrorCode::kInvalidArgument,
          "box perturbations need an image of at least 5x5");
}

ImageRGB occlusion_box(const ImageRGB& image, RngStream& rng) {
  require_box_size(image);
  const std::size_t side = static_cast<std::size_t>(
      std::floor(0.2 * static_cast<double>(std::min(image.width(), image.height()))));
  const std::size_t left = rng.next_below(image.width() - side + 1);
  const std::size_t top = rng.next_below(image.height() - side + 1);
  ImageRGB out = image;
  fill_rect(out, top, left, side, side, {128, 128, 128});
  return out;
}

std::size_t rect_extent(double frac, std::size_t side) {
  const auto v = static_cast<std::size_t>(std::round(frac * static_cast<double>(side)));
  return std::clamp<std::size_t>(v, 1, side);
}

ImageRGB patch_masking(const ImageRGB& image, RngStream& rng) {
  require_box_size(image);
  ImageRGB out = image;
  for (int i = 0; i < kPatchMaskCount; ++i) {
    const std::size_t w =
        rect_extent(rng.next_uniform(kPatchMaskMinFrac, kPatchMaskMaxFrac), image.width());
    const std::size_t h =
        rect_extent(rng.next_uniform(kPatchMaskMinFrac, kPatchMaskMaxFrac), image.height());
    const std::size_t left = rng.next_below(image.width() - w + 1);
    const std::size_t top = rng.next_below(image.height() - h + 1);
    fill_rect(out, top, left, h, w, {0, 0, 0});
  }
  return out;
}

// Brightness, then contrast about mid-grey, then saturation about luma, with
// clamping between stages and a single rounding at the end.
ImageRGB color_jitter(const ImageRGB& image, RngStream& rng) {
  const double brightness = rng.next_uniform(kJitterMin, kJitterMax);
  const double contrast = rng.next_uniform(kJitterMin, kJitterMax);
  const double saturation = rng.next_uniform(kJitterMin, kJitterMax);
  auto clamp255 = [](double v) { return std::clamp(v, 0.0, 255.0); };
  ImageRGB out = image;
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      const Rgb px = image.at(r, c);
      std::array<double, 3> v{};
      for (int k = 0; k < 3; ++k) {
        v[k] = clamp255(px[k] * brightness);
        v[k] = clamp255((v[k] - 127.5) * contrast + 127.5);
      }
      const double luma = 0.299 * v[0] + 0.587 * v[1] + 0.114 * v[2];
      Rgb result{};
      for (int k = 0; k < 3; ++k) result[k] = to_byte(luma + saturation * (v[k] - luma));
      out.set(r, c, result);
    }
  }
  return out;
}

}  // namespace

bool PerturbKind::stochastic() const {
  return type == PerturbType::kOcclusionBox || type == PerturbType::kPatchMasking ||
         type == PerturbType::kColorJitter;
}

void PerturbKind::validate() const {
  if (stochastic()) {
    require(seed.has_value(), ErrorCode::kInvalidArgument,
            std::string(perturb_name(type)) + " requires a seed");
  } else {
    require(!seed.has_value(), ErrorCode::kInvalidArgument,
            std::string(perturb_name(type)) + " does not take a seed");
  }
}

std::string_view perturb_name(PerturbType type) {
  return kNames[static_cast<std::size_t>(type)];
}

PerturbType parse_perturb_type(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<PerturbType>(i);
  }
  fail(ErrorCode::kInvalidArgument, "unknown perturbation kind '" + std::string(name) + "'");
}

ImageRGB perturb(const ImageRGB& image, const PerturbKind& kind) {
  kind.validate();
  switch (kind.type) {
    case PerturbType::kHaze:
      return map_channels(image, [](double p) { return 0.5 * p + 0.5 * 255.0; });
    case PerturbType::kHighlight:
      return map_channels(image, [](double p) { return 1.5 * p; });
    case PerturbType::kLowlight:
      return map_channels(image, [](double p) { return 0.45 * p; });
    case PerturbType::kContrast:
      return map_channels(image, [](double p) { return (p - 127.5) * 1.8 + 127.5; });
    default:
      break;
  }
  RngStream rng(*kind.seed, streams::kPerturb);
  switch (kind.type) {
    case PerturbType::kOcclusionBox:
      return occlusion_box(image, rng);
    case PerturbType::kPatchMasking:
      return patch_masking(image, rng);
    default:
      return color_jitter(image, rng);
  }
}

}  // namespace aml
