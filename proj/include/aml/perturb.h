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

#ifndef AML_PERTURB_H_
#define AML_PERTURB_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "aml/image.h"

namespace aml {

enum class PerturbType {
  kHaze,
  kHighlight,
  kLowlight,
  kContrast,
  kOcclusionBox,
  kPatchMasking,
  kColorJitter,
};

// A transformation plus its seed. Occlusion box, patch masking and colour
// jitter need a seed; the photometric kinds reject one.
struct PerturbKind {
  PerturbType type;
  std::optional<std::uint64_t> seed;

  bool stochastic() const;
  void validate() const;
};

std::string_view perturb_name(PerturbType type);
PerturbType parse_perturb_type(std::string_view name);

// Size range of each patch-masking rectangle as a fraction of the image side.
inline constexpr double kPatchMaskMinFrac = 0.05;
inline constexpr double kPatchMaskMaxFrac = 0.25;
inline constexpr int kPatchMaskCount = 3;
inline constexpr double kJitterMin = 0.6;
inline constexpr double kJitterMax = 1.4;

// All arithmetic is per channel in f64, rounded half away from zero and
// clamped to [0, 255] on output.
ImageRGB perturb(const ImageRGB& image, const PerturbKind& kind);

}  // namespace aml

#endif  // AML_PERTURB_H_
