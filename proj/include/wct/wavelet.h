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

#ifndef WCT_WAVELET_H_
#define WCT_WAVELET_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "wct/imaging.h"

namespace wct {

// Real-valued 2-D coefficient array, row-major.
class Subband {
 public:
  Subband() = default;
  Subband(int rows, int cols);
  // Throws DataError on size mismatch or non-finite values.
  Subband(int rows, int cols, std::vector<double> coeffs);

  static Subband FromImage(const GrayImage& img);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double at(int r, int c) const {
    return coeffs_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double& at(int r, int c) {
    return coeffs_[static_cast<std::size_t>(r) * cols_ + c];
  }

  double Energy() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> coeffs_;
};

// One level of the 2-D transform. `horizontal` is lowpass along rows and
// highpass along columns; `vertical` is the opposite; `diagonal` is highpass
// along both.
struct DecompositionLevel {
  Subband approx;
  Subband horizontal;
  Subband vertical;
  Subband diagonal;
};

// levels[0] is the first level (computed from the image), levels[k] from
// levels[k - 1].approx.
struct WaveletPyramid {
  std::vector<DecompositionLevel> levels;
};

enum class DetailBand { kHorizontal = 0, kVertical = 1, kDiagonal = 2 };

struct Db2Filters {
  std::array<double, 4> lowpass;
  std::array<double, 4> highpass;
};

// Daubechies 4-tap (two vanishing moments) orthonormal analysis filters;
// highpass[k] = (-1)^k * lowpass[3 - k].
const Db2Filters& Db2();

struct Dwt1dResult {
  std::vector<double> approx;
  std::vector<double> detail;
};

// One analysis step with periodic extension:
//   approx[k] = sum_m h[m] x[(2k + m) mod n], detail likewise with g.
// Requires even length >= 4.
Dwt1dResult Dwt1d(std::span<const double> signal);
std::vector<double> Idwt1d(std::span<const double> approx,
                           std::span<const double> detail);

// Separable 2-D step: rows first, then columns. Requires even dims >= 4.
DecompositionLevel Dwt2d(const Subband& mat);
Subband Idwt2d(const DecompositionLevel& level);

// Multi-level decomposition; width and height must be divisible by
// 2^levels.
WaveletPyramid Decompose(const GrayImage& img, int levels);
WaveletPyramid Decompose(const Subband& mat, int levels);

// Inverts Decompose. Throws DataError on inconsistent level dimensions.
Subband Reconstruct(const WaveletPyramid& pyramid);

const Subband& GetDetail(const DecompositionLevel& level, DetailBand band);

// The detail band whose coefficient histogram has the largest variance.
DetailBand MaxVarianceDetailBand(const DecompositionLevel& level);

const char* DetailBandName(DetailBand band);

}  // namespace wct

#endif  // WCT_WAVELET_H_
