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

#include "aml/bilinear.h"

#include <algorithm>
#include <cmath>

#include "aml/error.h"

namespace aml {

std::vector<AxisTap> bilinear_taps(std::size_t src, std::size_t dst) {
  require(src >= 1 && dst >= 1, ErrorCode::kInvalidArgument,
          "bilinear axis sizes must be >= 1");
  std::vector<AxisTap> taps(dst);
  const double scale = static_cast<double>(src) / static_cast<double>(dst);
  const double last = static_cast<double>(src - 1);
  for (std::size_t p = 0; p < dst; ++p) {
    const double x = std::clamp((static_cast<double>(p) + 0.5) * scale - 0.5, 0.0, last);
    const auto lo = static_cast<std::size_t>(std::floor(x));
    const std::size_t hi = std::min(lo + 1, src - 1);
    taps[p] = AxisTap{lo, hi, x - static_cast<double>(lo)};
  }
  return taps;
}

void bilinear_resize_adjoint(std::span<const double> grad_dst, std::size_t dst_h,
                             std::size_t dst_w, std::span<double> grad_src,
                             std::size_t src_w, const std::vector<AxisTap>& rows,
                             const std::vector<AxisTap>& cols) {
  std::fill(grad_src.begin(), grad_src.end(), 0.0);
  for (std::size_t y = 0; y < dst_h; ++y) {
    const AxisTap ry = rows[y];
    for (std::size_t x = 0; x < dst_w; ++x) {
      const AxisTap cx = cols[x];
      const double g = grad_dst[y * dst_w + x];
      const double gt = (1.0 - ry.frac) * g;
      const double gb = ry.frac * g;
      grad_src[ry.lo * src_w + cx.lo] += (1.0 - cx.frac) * gt;
      grad_src[ry.lo * src_w + cx.hi] += cx.frac * gt;
      grad_src[ry.hi * src_w + cx.lo] += (1.0 - cx.frac) * gb;
      grad_src[ry.hi * src_w + cx.hi] += cx.frac * gb;
    }
  }
}

}  // namespace aml
