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

#include "aml/io.h"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "aml/error.h"

namespace aml {
namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'M', 'L', 'T'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

// Cursor over a netpbm header: magic, then whitespace-separated decimal
// fields with '#' comments, then exactly one whitespace byte before raster.
class PnmHeader {
 public:
  explicit PnmHeader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string magic() {
    require(bytes_.size() >= 2, ErrorCode::kTruncated, "netpbm header truncated");
    pos_ = 2;
    return std::string(bytes_.begin(), bytes_.begin() + 2);
  }

  std::size_t next_field() {
    skip_space_and_comments();
    require(pos_ < bytes_.size(), ErrorCode::kTruncated, "netpbm header truncated");
    require(std::isdigit(bytes_[pos_]) != 0, ErrorCode::kBadFormat,
            "netpbm header field is not a number");
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_]) != 0) {
      value = value * 10 + (bytes_[pos_] - '0');
      require(value <= (1u << 24), ErrorCode::kBadFormat, "netpbm dimension too large");
      ++pos_;
    }
    return value;
  }

  std::size_t raster_offset() {
    require(pos_ < bytes_.size(), ErrorCode::kTruncated, "netpbm header truncated");
    require(std::isspace(bytes_[pos_]) != 0, ErrorCode::kBadFormat,
            "netpbm header must end with a whitespace byte");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_]) != 0) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct PnmLayout {
  std::size_t width;
  std::size_t height;
  std::size_t offset;
};

PnmLayout parse_pnm(std::span<const std::uint8_t> bytes, const char* binary,
                    const char* ascii, std::size_t channels) {
  PnmHeader header(bytes);
  const std::string magic = header.magic();
  require(magic != ascii, ErrorCode::kBadFormat,
          "ASCII netpbm (" + magic + ") is not supported");
  require(magic == binary, ErrorCode::kBadMagic,
          std::string("expected netpbm magic ") + binary);
  PnmLayout layout{};
  layout.width = header.next_field();
  layout.height = header.next_field();
  const std::size_t maxval = header.next_field();
  require(layout.width > 0 && layout.height > 0, ErrorCode::kBadFormat,
          "netpbm image has zero size");
  require(maxval == 255, ErrorCode::kBadFormat,
          "unsupported maxval " + std::to_string(maxval));
  layout.offset = header.raster_offset();
  const std::size_t need = layout.width * layout.height * channels;
  require(bytes.size() - layout.offset >= need, ErrorCode::kTruncated,
          "netpbm raster truncated");
  require(bytes.size() - layout.offset == need, ErrorCode::kBadFormat,
          "trailing bytes after netpbm raster");
  return layout;
}

void append_header(std::vector<std::uint8_t>& out, const char* magic,
                   std::size_t width, std::size_t height) {
  const std::string header = std::string(magic) + "\n" + std::to_string(width) +
                             " " + std::to_string(height) + "\n255\n";
  out.insert(out.end(), header.begin(), header.end());
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  require(!t.empty(), ErrorCode::kInvalidArgument, "cannot encode an empty tensor");
  require(t.all_finite(), ErrorCode::kNonFinite, "tensor contains non-finite values");
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(7 + 4 * t.rank() + 4 * t.size());
  out.push_back(kAmltVersion);
  out.push_back(kAmltDtypeF32);
  out.push_back(static_cast<std::uint8_t>(t.rank()));
  for (std::size_t d : t.shape()) put_u32(out, static_cast<std::uint32_t>(d));
  for (float v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  require(bytes.size() >= 4, ErrorCode::kTruncated, "AMLT header truncated");
  require(std::memcmp(bytes.data(), kMagic, 4) == 0, ErrorCode::kBadMagic,
          "bad magic, not an AMLT file");
  require(bytes.size() >= 7, ErrorCode::kTruncated, "AMLT header truncated");
  require(bytes[4] == kAmltVersion, ErrorCode::kUnsupportedVersion,
          "unsupported AMLT version " + std::to_string(bytes[4]));
  require(bytes[5] == kAmltDtypeF32, ErrorCode::kBadFormat,
          "unsupported AMLT dtype " + std::to_string(bytes[5]));
  const std::size_t ndim = bytes[6];
  require(ndim >= 1 && ndim <= Tensor::kMaxRank, ErrorCode::kBadFormat,
          "AMLT rank must be 1..4");
  require(bytes.size() >= 7 + 4 * ndim, ErrorCode::kTruncated, "AMLT dims truncated");
  std::vector<std::size_t> shape(ndim);
  for (std::size_t i = 0; i < ndim; ++i) {
    shape[i] = get_u32(bytes.data() + 7 + 4 * i);
    require(shape[i] > 0, ErrorCode::kBadFormat, "AMLT dimension is zero");
  }
  std::size_t count = 1;
  for (std::size_t d : shape) {
    require(count <= (std::size_t{1} << 40) / d, ErrorCode::kBadFormat,
            "AMLT shape too large");
    count *= d;
  }
  const std::size_t offset = 7 + 4 * ndim;
  require(bytes.size() - offset >= 4 * count, ErrorCode::kTruncated,
          "AMLT payload truncated");
  require(bytes.size() - offset == 4 * count, ErrorCode::kBadFormat,
          "trailing bytes after AMLT payload");
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_u32(bytes.data() + offset + 4 * i));
    if (!std::isfinite(data[i])) {
      fail(ErrorCode::kNonFinite,
           "AMLT payload contains a non-finite value at index " + std::to_string(i));
    }
  }
  return Tensor(std::move(shape), std::move(data));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  require(!in.bad(), ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::kIo, "cannot open for writing " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  require(out.good(), ErrorCode::kIo, "write failed: " + path.string());
}

void write_tensor(const Tensor& t, const std::filesystem::path& path) {
  write_file(path, encode_tensor(t));
}

Tensor read_tensor(const std::filesystem::path& path) {
  return decode_tensor(read_file(path));
}

std::vector<std::uint8_t> encode_ppm(const ImageRGB& image) {
  std::vector<std::uint8_t> out;
  append_header(out, "P6", image.width(), image.height());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

ImageRGB decode_ppm(std::span<const std::uint8_t> bytes) {
  const PnmLayout layout = parse_pnm(bytes, "P6", "P3", 3);
  std::vector<std::uint8_t> pixels(bytes.begin() + layout.offset, bytes.end());
  return ImageRGB(layout.width, layout.height, std::move(pixels));
}

std::vector<std::uint8_t> encode_pgm(const MaskBitmap& mask) {
  std::vector<std::uint8_t> out;
  append_header(out, "P5", mask.width(), mask.height());
  for (std::uint8_t b : mask.bits()) out.push_back(b != 0 ? 255 : 0);
  return out;
}

MaskBitmap decode_pgm(std::span<const std::uint8_t> bytes) {
  const PnmLayout layout = parse_pnm(bytes, "P5", "P2", 1);
  std::vector<std::uint8_t> bits;
  bits.reserve(layout.width * layout.height);
  for (std::size_t i = layout.offset; i < bytes.size(); ++i) {
    if (bytes[i] != 0 && bytes[i] != 255) {
      fail(ErrorCode::kNotBinary, "mask not binary: grey level " + std::to_string(bytes[i]));
    }
    bits.push_back(bytes[i] == 255 ? 1 : 0);
  }
  return MaskBitmap(layout.width, layout.height, std::move(bits));
}

void write_ppm(const ImageRGB& image, const std::filesystem::path& path) {
  write_file(path, encode_ppm(image));
}

ImageRGB read_ppm(const std::filesystem::path& path) {
  return decode_ppm(read_file(path));
}

void write_pgm(const MaskBitmap& mask, const std::filesystem::path& path) {
  write_file(path, encode_pgm(mask));
}

MaskBitmap read_pgm(const std::filesystem::path& path) {
  return decode_pgm(read_file(path));
}

}  // namespace aml
