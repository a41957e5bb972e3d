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

#ifndef WCT_IMAGING_H_
#define WCT_IMAGING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace wct {

// 8-bit grayscale raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  // Throws DataError unless width, height > 0 and pixels.size() == w * h.
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);
  // Image filled with a single value.
  GrayImage(int width, int height, std::uint8_t fill);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  std::uint8_t at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  void set(int row, int col, std::uint8_t v) {
    pixels_[static_cast<std::size_t>(row) * width_ + col] = v;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Image reduced to `levels` gray levels; every value lies in [0, levels).
class QuantizedImage {
 public:
  QuantizedImage(int width, int height, int levels, std::vector<int> values);

  int width() const { return width_; }
  int height() const { return height_; }
  int levels() const { return levels_; }
  const std::vector<int>& values() const { return values_; }
  int at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }

 private:
  int width_;
  int height_;
  int levels_;
  std::vector<int> values_;
};

// Square sub-image tiling. Blocks start at (r * stride, c * stride).
struct BlockSpec {
  int block_size = 32;
  int stride = 32;

  // Throws ConfigError if block_size < 4 or stride < 1.
  void Validate() const;
};

struct BlockGrid {
  int rows = 0;
  int cols = 0;
  int count() const { return rows * cols; }
};

// Decodes a P2 or P5 PGM with maxval <= 255. Pixel values are kept as
// stored (no rescaling to 255). Throws PgmError with the failing offset.
GrayImage LoadPgm(std::span<const std::uint8_t> bytes);
GrayImage ReadPgmFile(const std::filesystem::path& path);

// Always encodes binary P5 with maxval 255.
std::vector<std::uint8_t> WritePgm(const GrayImage& img);
void WritePgmFile(const std::filesystem::path& path, const GrayImage& img);

// Uniform binning: value = floor(pixel * levels / 256), 2 <= levels <= 256.
QuantizedImage Quantize(const GrayImage& img, int levels);

// Number of block positions along each axis for `spec` over `img`.
BlockGrid ComputeBlockGrid(const GrayImage& img, const BlockSpec& spec);

// Copies of every block that fits entirely inside the image, enumerated
// row-major from the top-left corner. Throws ConfigError when the block does
// not fit in the image.
std::vector<GrayImage> ExtractBlocks(const GrayImage& img,
                                     const BlockSpec& spec);

// Non-overlapping block_size tiles over the largest centered region that is
// an exact multiple of block_size on both axes.
std::vector<GrayImage> ExtractCenteredTiles(const GrayImage& img,
                                            int block_size);

// Copy of the rectangle [row, row + h) x [col, col + w).
GrayImage Crop(const GrayImage& img, int row, int col, int h, int w);

}  // namespace wct

#endif  // WCT_IMAGING_H_
