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

#include "aml/tensor.h"

#include <cmath>
#include <cstring>
#include <string>

#include "aml/error.h"

namespace aml {

std::size_t checked_element_count(std::span<const std::size_t> shape) {
  require(!shape.empty() && shape.size() <= Tensor::kMaxRank,
          ErrorCode::kShapeMismatch,
          "tensor rank must be 1..4, got " + std::to_string(shape.size()));
  std::size_t n = 1;
  for (std::size_t d : shape) {
    require(d > 0, ErrorCode::kShapeMismatch, "tensor dimension must be positive");
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  data_.assign(checked_element_count(shape_), 0.0f);
}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  validate();
}

void Tensor::validate() const {
  const std::size_t n = checked_element_count(shape_);
  require(n == data_.size(), ErrorCode::kShapeMismatch,
          "tensor payload has " + std::to_string(data_.size()) +
              " elements, shape needs " + std::to_string(n));
}

std::size_t Tensor::dim(std::size_t axis) const {
  require(axis < shape_.size(), ErrorCode::kShapeMismatch, "axis out of range");
  return shape_[axis];
}

std::size_t Tensor::rows() const {
  require(shape_.size() == 2, ErrorCode::kShapeMismatch, "expected a matrix");
  return shape_[0];
}

std::size_t Tensor::cols() const {
  require(shape_.size() == 2, ErrorCode::kShapeMismatch, "expected a matrix");
  return shape_[1];
}

bool Tensor::all_finite() const {
  for (float v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool operator==(const Tensor& a, const Tensor& b) {
  return a.shape_ == b.shape_ &&
         (a.data_.empty() ||
          std::memcmp(a.data_.data(), b.data_.data(),
                      a.data_.size() * sizeof(float)) == 0);
}

}  // namespace aml
