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

#include "aml/metrics.h"

#include <cstdio>

#include "aml/error.h"

namespace aml {
namespace {

void check_nonempty(std::span<const EvalSample> samples) {
  require(!samples.empty(), ErrorCode::kInvalidArgument, "metrics need at least one sample");
}

}  // namespace

Overlap overlap(const EvalSample& s) {
  require(s.pred.width() == s.gt.width() && s.pred.height() == s.gt.height(),
          ErrorCode::kShapeMismatch, "prediction and ground truth sizes differ");
  Overlap o;
  auto p = s.pred.bits();
  auto g = s.gt.bits();
  for (std::size_t i = 0; i < p.size(); ++i) {
    o.intersection += (p[i] & g[i]);
    o.uni += (p[i] | g[i]);
  }
  return o;
}

double iou(const EvalSample& s) {
  const Overlap o = overlap(s);
  if (o.uni == 0) return 1.0;
  return static_cast<double>(o.intersection) / static_cast<double>(o.uni);
}

double oiou(std::span<const EvalSample> samples) {
  check_nonempty(samples);
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (const EvalSample& s : samples) {
    const Overlap o = overlap(s);
    inter += o.intersection;
    uni += o.uni;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double miou(std::span<const EvalSample> samples) {
  check_nonempty(samples);
  double sum = 0.0;
  for (const EvalSample& s : samples) sum += iou(s);
  return sum / static_cast<double>(samples.size());
}

double precision_at(std::span<const EvalSample> samples, double x) {
  check_nonempty(samples);
  require(x > 0.0 && x < 1.0, ErrorCode::kInvalidArgument,
          "precision threshold must lie in (0, 1)");
  std::size_t hits = 0;
  for (const EvalSample& s : samples) {
    if (iou(s) > x) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

std::string metrics_report(std::span<const EvalSample> samples) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "miou=%.2f\noiou=%.2f\np@50=%.2f\np@70=%.2f\np@90=%.2f\n",
                100.0 * miou(samples), 100.0 * oiou(samples),
                100.0 * precision_at(samples, 0.5), 100.0 * precision_at(samples, 0.7),
                100.0 * precision_at(samples, 0.9));
  return buf;
}

}  // namespace aml
