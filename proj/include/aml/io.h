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

#ifndef AML_IO_H_
#define AML_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "aml/image.h"
#include "aml/tensor.h"

namespace aml {

// AMLT layout, all integers little-endian:
//   "AMLT" | version 0x01 | dtype 0x01 (f32) | ndim | ndim x u32 dims | f32 payload
inline constexpr std::uint8_t kAmltVersion = 0x01;
inline constexpr std::uint8_t kAmltDtypeF32 = 0x01;

std::vector<std::uint8_t> encode_tensor(const Tensor& t);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

void write_tensor(const Tensor& t, const std::filesystem::path& path);
Tensor read_tensor(const std::filesystem::path& path);

// Binary netpbm only (P6 / P5), maxval 255. Masks are stored as 0/255 and any
// other grey level is rejected on read.
std::vector<std::uint8_t> encode_ppm(const ImageRGB& image);
ImageRGB decode_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const MaskBitmap& mask);
MaskBitmap decode_pgm(std::span<const std::uint8_t> bytes);

void write_ppm(const ImageRGB& image, const std::filesystem::path& path);
ImageRGB read_ppm(const std::filesystem::path& path);
void write_pgm(const MaskBitmap& mask, const std::filesystem::path& path);
MaskBitmap read_pgm(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes);

}  // namespace aml

#endif  // AML_IO_H_
