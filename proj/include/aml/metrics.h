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

#ifndef AML_METRICS_H_
#define AML_METRICS_H_

#include <cstddef>
#include <span>
#include <string>

#include "aml/image.h"

namespace aml {

struct EvalSample {
  MaskBitmap pred;
  MaskBitmap gt;
};

struct Overlap {
  std::size_t intersection = 0;
  std::size_t uni = 0;
};

Overlap overlap(const EvalSample& s);

// |pred & gt| / |pred | gt|; 1.0 when both masks are empty.
double iou(const EvalSample& s);
// Sum of intersections over sum of unions.
double oiou(std::span<const EvalSample> samples);
double miou(std::span<const EvalSample> samples);
// Fraction of samples whose IoU strictly exceeds x.
double precision_at(std::span<const EvalSample> samples, double x);

// miou=, oiou=, p@50=, p@70=, p@90= as percentages with two decimals.
std::string metrics_report(std::span<const EvalSample> samples);

}  // namespace aml

#endif  // AML_METRICS_H_
