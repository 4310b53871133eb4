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

#include <gtest/gtest.h>

#include <cstring>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "aml/error.h"
#include "aml/io.h"
#include "aml/rng.h"
#include "aml/tensor.h"

namespace aml {
namespace {

namespace fs = std::filesystem;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected aml::Error";
  return ErrorCode::kInvalidArgument;
}

std::vector<std::uint8_t> bytes_of(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

TEST(TensorTest, RejectsInconsistentShapes) {
  EXPECT_EQ(code_of([] { Tensor({2, 3}, std::vector<float>(5)); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([] { Tensor(std::vector<std::size_t>{}); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([] { Tensor({1, 1, 1, 1, 1}); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([] { Tensor({3, 0}); }), ErrorCode::kShapeMismatch);
}

TEST(TensorIoTest, ScalarHeaderLayout) {
  const auto bytes = encode_tensor(Tensor({1}, {0.0f}));
  ASSERT_EQ(bytes.size(), 15u);  // 7 header bytes, one u32 dim, one f32
  const std::uint8_t head[] = {0x41, 0x4D, 0x4C, 0x54, 0x01, 0x01, 0x01};
  for (int i = 0; i < 7; ++i) EXPECT_EQ(bytes[i], head[i]) << i;
  EXPECT_EQ(bytes[7], 1);
  EXPECT_EQ(bytes[8] | bytes[9] | bytes[10], 0);
  for (int i = 11; i < 15; ++i) EXPECT_EQ(bytes[i], 0);
}

TEST(TensorIoTest, LittleEndianPayload) {
  const auto bytes = encode_tensor(Tensor({2}, {1.0f, -2.0f}));
  // 1.0f = 0x3F800000, -2.0f = 0xC0000000
  EXPECT_EQ(bytes[11], 0x00);
  EXPECT_EQ(bytes[14], 0x3F);
  EXPECT_EQ(bytes[13], 0x80);
  EXPECT_EQ(bytes[18], 0xC0);
}

TEST(TensorIoTest, RoundTripIsBitExact) {
  RngStream rng(11, 99);
  for (const auto& shape : std::vector<std::vector<std::size_t>>{
           {3, 4}, {7}, {2, 3, 5}, {2, 1, 3, 2}}) {
    Tensor t(shape);
    for (float& v : t.data()) v = static_cast<float>(rng.next_gaussian(0.0, 100.0));
    t.data()[0] = -0.0f;
    const Tensor back = decode_tensor(encode_tensor(t));
    EXPECT_TRUE(back == t);
  }
}

TEST(TensorIoTest, FileRoundTrip) {
  const fs::path p = fs::temp_directory_path() / "aml_tensor_io_test.amlt";
  Tensor t({2, 2}, {1.5f, -0.25f, 3e-8f, 12345.0f});
  write_tensor(t, p);
  EXPECT_TRUE(read_tensor(p) == t);
  fs::remove(p);
}

TEST(TensorIoTest, DistinctErrors) {
  auto good = encode_tensor(Tensor({3}, {1, 2, 3}));

  auto bad_magic = good;
  bad_magic[3] = 'X';
  EXPECT_EQ(code_of([&] { decode_tensor(bad_magic); }), ErrorCode::kBadMagic);

  auto bad_version = good;
  bad_version[4] = 0x02;
  EXPECT_EQ(code_of([&] { decode_tensor(bad_version); }), ErrorCode::kUnsupportedVersion);

  auto truncated = good;
  truncated.pop_back();
  EXPECT_EQ(code_of([&] { decode_tensor(truncated); }), ErrorCode::kTruncated);

  auto nan = good;
  const float q = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(nan.data() + 11, &q, 4);
  EXPECT_EQ(code_of([&] { decode_tensor(nan); }), ErrorCode::kNonFinite);

  auto inf = good;
  const float i = std::numeric_limits<float>::infinity();
  std::memcpy(inf.data() + 15, &i, 4);
  EXPECT_EQ(code_of([&] { decode_tensor(inf); }), ErrorCode::kNonFinite);

  auto trailing = good;
  trailing.push_back(0);
  EXPECT_EQ(code_of([&] { decode_tensor(trailing); }), ErrorCode::kBadFormat);

  EXPECT_EQ(code_of([] { read_tensor("/nonexistent/dir/x.amlt"); }), ErrorCode::kIo);
  EXPECT_EQ(code_of([] { encode_tensor(Tensor({1}, {std::nanf("")})); }),
            ErrorCode::kNonFinite);
}

TEST(NetpbmTest, WhitePixel) {
  const auto img = decode_ppm(bytes_of(std::string("P6\n1 1\n255\n") + "\xff\xff\xff"));
  EXPECT_EQ(img.width(), 1u);
  EXPECT_EQ(img.at(0, 0), (Rgb{255, 255, 255}));
}

TEST(NetpbmTest, HeaderCommentsAreSkipped) {
  const auto img =
      decode_ppm(bytes_of(std::string("P6 # comment\n# more\n2 1 255\n") + "abcdef"));
  EXPECT_EQ(img.at(0, 1), (Rgb{'d', 'e', 'f'}));
}

TEST(NetpbmTest, MaskRoundTrip) {
  const MaskBitmap m(2, 2, {1, 0, 0, 1});
  const auto bytes = encode_pgm(m);
  EXPECT_EQ(bytes.back(), 255);
  EXPECT_EQ(decode_pgm(bytes), m);
}

TEST(NetpbmTest, ImageRoundTrip) {
  ImageRGB img(3, 2);
  img.set(1, 2, {1, 2, 3});
  img.set(0, 0, {250, 0, 7});
  EXPECT_EQ(decode_ppm(encode_ppm(img)), img);
}

TEST(NetpbmTest, Errors) {
  EXPECT_EQ(code_of([] { decode_pgm(bytes_of(std::string("P5\n1 1\n255\n") + "\x80")); }),
            ErrorCode::kNotBinary);
  EXPECT_EQ(code_of([] { decode_ppm(bytes_of("P3\n1 1\n255\n255 255 255\n")); }),
            ErrorCode::kBadFormat);
  EXPECT_EQ(code_of([] { decode_pgm(bytes_of("P2\n1 1\n255\n0\n")); }), ErrorCode::kBadFormat);
  EXPECT_EQ(code_of([] { decode_ppm(bytes_of(std::string("P6\n1 1\n65535\n") + "abcdef")); }),
            ErrorCode::kBadFormat);
  EXPECT_EQ(code_of([] { decode_ppm(bytes_of(std::string("P6\n2 2\n255\n") + "abc")); }),
            ErrorCode::kTruncated);
  EXPECT_EQ(code_of([] { decode_ppm(bytes_of("P6\n2")); }), ErrorCode::kTruncated);
  EXPECT_EQ(code_of([] { decode_ppm(bytes_of(std::string("P5\n1 1\n255\n") + "\0")); }),
            ErrorCode::kBadMagic);
}

TEST(MaskBitmapTest, RejectsNonBinary) {
  EXPECT_EQ(code_of([] { MaskBitmap(1, 2, {0, 2}); }), ErrorCode::kNotBinary);
}

}  // namespace
}  // namespace aml
