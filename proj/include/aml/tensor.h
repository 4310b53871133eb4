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

#ifndef AML_TENSOR_H_
#define AML_TENSOR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace aml {

// Dense row-major f32 array with 1 to 4 axes. Shape and payload length are
// checked at every construction site.
class Tensor {
 public:
  static constexpr std::size_t kMaxRank = 4;

  Tensor() = default;
  // Zero-filled tensor of the given shape.
  explicit Tensor(std::vector<std::size_t> shape);
  Tensor(std::vector<std::size_t> shape, std::vector<float> data);

  static Tensor matrix(std::size_t rows, std::size_t cols) {
    return Tensor({rows, cols});
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  // Matrix view helpers; valid only for rank-2 tensors.
  std::size_t rows() const;
  std::size_t cols() const;
  float operator()(std::size_t r, std::size_t c) const {
    return data_[r * shape_[1] + c];
  }
  float& operator()(std::size_t r, std::size_t c) {
    return data_[r * shape_[1] + c];
  }
  std::span<const float> row(std::size_t r) const {
    return std::span<const float>(data_).subspan(r * shape_[1], shape_[1]);
  }
  std::span<float> row(std::size_t r) {
    return std::span<float>(data_).subspan(r * shape_[1], shape_[1]);
  }

  bool all_finite() const;

  // Bitwise comparison of shape and payload.
  friend bool operator==(const Tensor& a, const Tensor& b);

 private:
  void validate() const;

  std::vector<std::size_t> shape_;
  std::vector<float> data_;
};

// Product of the dimensions, validating the 1..4 axis and positive-size rules.
std::size_t checked_element_count(std::span<const std::size_t> shape);

}  // namespace aml

#endif  // AML_TENSOR_H_
