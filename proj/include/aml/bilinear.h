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

#ifndef AML_BILINEAR_H_
#define AML_BILINEAR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace aml {

// Source neighbours and blend weight for one output coordinate under the
// half-pixel-centre convention: x = (p + 0.5) * src / dst - 0.5, clamped to
// [0, src - 1]; value = (1 - frac) * s[lo] + frac * s[hi].
struct AxisTap {
  std::size_t lo;
  std::size_t hi;
  double frac;
};

std::vector<AxisTap> bilinear_taps(std::size_t src, std::size_t dst);

// Generic kernel used by both the similarity upsampler and the toy head.
// src is [src_h, src_w], dst is [dst_h, dst_w], both row-major.
template <typename In, typename Out>
void bilinear_resize(std::span<const In> src, std::size_t src_h, std::size_t src_w,
                     std::span<Out> dst, std::size_t dst_h, std::size_t dst_w,
                     const std::vector<AxisTap>& rows, const std::vector<AxisTap>& cols) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < static_cast<std::ptrdiff_t>(dst_h); ++y) {
    const AxisTap ry = rows[y];
    const In* top = src.data() + ry.lo * src_w;
    const In* bottom = src.data() + ry.hi * src_w;
    for (std::size_t x = 0; x < dst_w; ++x) {
      const AxisTap cx = cols[x];
      const double t = (1.0 - cx.frac) * top[cx.lo] + cx.frac * top[cx.hi];
      const double b = (1.0 - cx.frac) * bottom[cx.lo] + cx.frac * bottom[cx.hi];
      dst[y * dst_w + x] = static_cast<Out>((1.0 - ry.frac) * t + ry.frac * b);
    }
  }
  (void)src_h;
}

// Adjoint of bilinear_resize: scatters dst-shaped gradients back onto the
// source grid. Serial so the accumulation order is fixed.
void bilinear_resize_adjoint(std::span<const double> grad_dst, std::size_t dst_h,
                             std::size_t dst_w, std::span<double> grad_src,
                             std::size_t src_w, const std::vector<AxisTap>& rows,
                             const std::vector<AxisTap>& cols);

}  // namespace aml

#endif  // AML_BILINEAR_H_
