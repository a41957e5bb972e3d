/*
 * Copyright 2026 The WCT Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wct/imaging.h"

#include <fstream>
#include <iterator>
#include <string>

#include "wct/errors.h"

namespace wct {

PgmError::PgmError(Kind kind, std::size_t offset, const std::string& what)
    : DataError("PGM parse error at byte " + std::to_string(offset) + ": " +
                what),
      kind_(kind),
      offset_(offset) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) {
    throw DataError("image dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw DataError("pixel count does not match width x height");
  }
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(
                    static_cast<std::size_t>(width > 0 ? width : 0) *
                        (height > 0 ? height : 0),
                    fill)) {}

QuantizedImage::QuantizedImage(int width, int height, int levels,
                               std::vector<int> values)
    : width_(width), height_(height), levels_(levels), values_(std::move(values)) {
  if (width <= 0 || height <= 0) {
    throw DataError("quantized image dimensions must be positive");
  }
  if (levels < 2) throw ConfigError("gray level count must be >= 2");
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw DataError("value count does not match width x height");
  }
  for (const int v : values_) {
    if (v < 0 || v >= levels) {
      throw DataError("quantized value outside [0, levels)");
    }
  }
}

void BlockSpec::Validate() const {
  if (block_size < 4) throw ConfigError("block_size must be >= 4");
  if (stride < 1) throw ConfigError("stride must be >= 1");
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  // Skips whitespace and '#' comments.
  void SkipSeparators() {
    while (pos_ < bytes_.size()) {
      const char c = static_cast<char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (IsSpace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  // Reads an unsigned decimal integer after separators. Returns false if no
  // digit is present at the current position.
  bool ReadUnsigned(long long& out) {
    SkipSeparators();
    const std::size_t start = pos_;
    long long v = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > (1LL << 40)) return false;
      ++pos_;
    }
    if (pos_ == start) return false;
    out = v;
    return true;
  }

  std::uint8_t byte_at(std::size_t i) const { return bytes_[i]; }
  std::size_t size() const { return bytes_.size(); }
  void advance(std::size_t n) { pos_ += n; }

  static bool IsSpace(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
           c == '\f';
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage LoadPgm(std::span<const std::uint8_t> bytes) {
  using Kind = PgmError::Kind;
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw PgmError(Kind::kMalformedHeader, 0, "missing P2/P5 magic number");
  }
  const bool binary = bytes[1] == '5';
  PgmReader reader(bytes);
  reader.advance(2);
  long long width = 0;
  long long height = 0;
  long long maxval = 0;
  if (!reader.ReadUnsigned(width) || width <= 0) {
    throw PgmError(Kind::kMalformedHeader, reader.pos(), "invalid width");
  }
  if (!reader.ReadUnsigned(height) || height <= 0) {
    throw PgmError(Kind::kMalformedHeader, reader.pos(), "invalid height");
  }
  if (!reader.ReadUnsigned(maxval) || maxval <= 0) {
    throw PgmError(Kind::kMalformedHeader, reader.pos(), "invalid maxval");
  }
  if (maxval > 255) {
    throw PgmError(Kind::kMaxvalTooLarge, reader.pos(),
                   "maxval " + std::to_string(maxval) + " exceeds 255");
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> pixels;
  pixels.reserve(count);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (reader.at_end() || !PgmReader::IsSpace(static_cast<char>(
                               reader.byte_at(reader.pos())))) {
      throw PgmError(Kind::kMalformedHeader, reader.pos(),
                     "expected whitespace after maxval");
    }
    reader.advance(1);
    const std::size_t start = reader.pos();
    if (reader.size() - start < count) {
      throw PgmError(Kind::kTruncatedPayload, reader.size(),
                     "expected " + std::to_string(count) + " pixel bytes, got " +
                         std::to_string(reader.size() - start));
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t v = reader.byte_at(start + i);
      if (v > maxval) {
        throw PgmError(Kind::kBadValue, start + i, "pixel value exceeds maxval");
      }
      pixels.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      long long v = 0;
      reader.SkipSeparators();
      if (reader.at_end()) {
        throw PgmError(Kind::kTruncatedPayload, reader.pos(),
                       "expected " + std::to_string(count) +
                           " pixel values, got " + std::to_string(i));
      }
      const std::size_t value_pos = reader.pos();
      if (!reader.ReadUnsigned(v)) {
        throw PgmError(Kind::kBadValue, value_pos, "non-numeric pixel value");
      }
      if (v > maxval) {
        throw PgmError(Kind::kBadValue, value_pos, "pixel value exceeds maxval");
      }
      pixels.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::move(pixels));
}

GrayImage ReadPgmFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return LoadPgm(bytes);
  } catch (const PgmError& e) {
    throw PgmError(e.kind(), e.offset(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> WritePgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

void WritePgmFile(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write image " + path.string());
  const auto bytes = WritePgm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

QuantizedImage Quantize(const GrayImage& img, int levels) {
  if (levels < 2 || levels > 256) {
    throw ConfigError("quantization levels must be in [2, 256], got " +
                      std::to_string(levels));
  }
  std::vector<int> values;
  values.reserve(img.pixels().size());
  for (const std::uint8_t p : img.pixels()) {
    values.push_back(static_cast<int>(p) * levels / 256);
  }
  return QuantizedImage(img.width(), img.height(), levels, std::move(values));
}

BlockGrid ComputeBlockGrid(const GrayImage& img, const BlockSpec& spec) {
  spec.Validate();
  if (spec.block_size > img.width() || spec.block_size > img.height()) {
    throw ConfigError("block size " + std::to_string(spec.block_size) +
                      " exceeds image " + std::to_string(img.width()) + "x" +
                      std::to_string(img.height()));
  }
  return {(img.height() - spec.block_size) / spec.stride + 1,
          (img.width() - spec.block_size) / spec.stride + 1};
}

GrayImage Crop(const GrayImage& img, int row, int col, int h, int w) {
  if (row < 0 || col < 0 || h <= 0 || w <= 0 || row + h > img.height() ||
      col + w > img.width()) {
    throw DataError("crop rectangle outside image");
  }
  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(h) * w);
  for (int r = 0; r < h; ++r) {
    const auto begin = img.pixels().begin() +
                       static_cast<std::ptrdiff_t>(row + r) * img.width() + col;
    pixels.insert(pixels.end(), begin, begin + w);
  }
  return GrayImage(w, h, std::move(pixels));
}

std::vector<GrayImage> ExtractBlocks(const GrayImage& img,
                                     const BlockSpec& spec) {
  const BlockGrid grid = ComputeBlockGrid(img, spec);
  std::vector<GrayImage> blocks;
  blocks.reserve(grid.count());
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      blocks.push_back(Crop(img, r * spec.stride, c * spec.stride,
                            spec.block_size, spec.block_size));
    }
  }
  return blocks;
}

std::vector<GrayImage> ExtractCenteredTiles(const GrayImage& img,
                                            int block_size) {
  const BlockSpec spec{block_size, block_size};
  spec.Validate();
  const int rows = img.height() / block_size;
  const int cols = img.width() / block_size;
  if (rows == 0 || cols == 0) {
    throw ConfigError("block size " + std::to_string(block_size) +
                      " exceeds image " + std::to_string(img.width()) + "x" +
                      std::to_string(img.height()));
  }
  const GrayImage region =
      Crop(img, (img.height() - rows * block_size) / 2,
           (img.width() - cols * block_size) / 2, rows * block_size,
           cols * block_size);
  return ExtractBlocks(region, spec);
}

}  // namespace wct
