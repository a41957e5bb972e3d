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

#include "wct/wavelet.h"

#include <cmath>
#include <string>

#include "wct/errors.h"

namespace wct {

Subband::Subband(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      coeffs_(static_cast<std::size_t>(rows) * cols, 0.0) {
  if (rows <= 0 || cols <= 0) throw DataError("subband dims must be positive");
}

Subband::Subband(int rows, int cols, std::vector<double> coeffs)
    : rows_(rows), cols_(cols), coeffs_(std::move(coeffs)) {
  if (rows <= 0 || cols <= 0) throw DataError("subband dims must be positive");
  if (coeffs_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DataError("coefficient count does not match rows x cols");
  }
  for (const double v : coeffs_) {
    if (!std::isfinite(v)) throw DataError("non-finite subband coefficient");
  }
}

Subband Subband::FromImage(const GrayImage& img) {
  std::vector<double> coeffs(img.pixels().begin(), img.pixels().end());
  return Subband(img.height(), img.width(), std::move(coeffs));
}

double Subband::Energy() const {
  double e = 0.0;
  for (const double v : coeffs_) e += v * v;
  return e;
}

const Db2Filters& Db2() {
  static const Db2Filters filters = [] {
    const double s3 = std::sqrt(3.0);
    const double norm = 4.0 * std::sqrt(2.0);
    Db2Filters f;
    f.lowpass = {(1 + s3) / norm, (3 + s3) / norm, (3 - s3) / norm,
                 (1 - s3) / norm};
    for (int k = 0; k < 4; ++k) {
      f.highpass[k] = (k % 2 == 0 ? 1.0 : -1.0) * f.lowpass[3 - k];
    }
    return f;
  }();
  return filters;
}

namespace {

void CheckLength(std::size_t n, const char* what) {
  if (n < 4 || n % 2 != 0) {
    throw DataError(std::string(what) + " length must be even and >= 4, got " +
                    std::to_string(n));
  }
}

// Strided variants used by the 2-D transform to avoid copies.
void AnalyzeStrided(const double* in, std::size_t n, std::size_t stride,
                    double* lo, double* hi, std::size_t out_stride) {
  const auto& f = Db2();
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t m = 0; m < 4; ++m) {
      const double x = in[((2 * k + m) % n) * stride];
      a += f.lowpass[m] * x;
      d += f.highpass[m] * x;
    }
    lo[k * out_stride] = a;
    hi[k * out_stride] = d;
  }
}

void SynthesizeStrided(const double* lo, const double* hi, std::size_t half,
                       std::size_t in_stride, double* out,
                       std::size_t stride) {
  const auto& f = Db2();
  const std::size_t n = 2 * half;
  for (std::size_t i = 0; i < n; ++i) out[i * stride] = 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const double a = lo[k * in_stride];
    const double d = hi[k * in_stride];
    for (std::size_t m = 0; m < 4; ++m) {
      out[((2 * k + m) % n) * stride] += f.lowpass[m] * a + f.highpass[m] * d;
    }
  }
}

}  // namespace

Dwt1dResult Dwt1d(std::span<const double> signal) {
  CheckLength(signal.size(), "signal");
  const std::size_t half = signal.size() / 2;
  Dwt1dResult r{std::vector<double>(half), std::vector<double>(half)};
  AnalyzeStrided(signal.data(), signal.size(), 1, r.approx.data(),
                 r.detail.data(), 1);
  return r;
}

std::vector<double> Idwt1d(std::span<const double> approx,
                           std::span<const double> detail) {
  if (approx.size() != detail.size()) {
    throw DataError("approx and detail lengths differ");
  }
  CheckLength(2 * approx.size(), "reconstructed signal");
  std::vector<double> out(2 * approx.size());
  SynthesizeStrided(approx.data(), detail.data(), approx.size(), 1, out.data(),
                    1);
  return out;
}

DecompositionLevel Dwt2d(const Subband& mat) {
  CheckLength(mat.rows(), "row count");
  CheckLength(mat.cols(), "column count");
  const int rows = mat.rows();
  const int cols = mat.cols();
  const int hr = rows / 2;
  const int hc = cols / 2;
  // Row pass: each row splits into lowpass [0, hc) and highpass [hc, cols).
  std::vector<double> tmp(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    const double* in = mat.coeffs().data() + static_cast<std::size_t>(r) * cols;
    double* out = tmp.data() + static_cast<std::size_t>(r) * cols;
    AnalyzeStrided(in, cols, 1, out, out + hc, 1);
  }
  // Column pass.
  std::vector<double> out(static_cast<std::size_t>(rows) * cols);
  for (int c = 0; c < cols; ++c) {
    AnalyzeStrided(tmp.data() + c, rows, cols, out.data() + c,
                   out.data() + static_cast<std::size_t>(hr) * cols + c, cols);
  }
  auto quadrant = [&](int r0, int c0) {
    std::vector<double> q(static_cast<std::size_t>(hr) * hc);
    for (int r = 0; r < hr; ++r) {
      for (int c = 0; c < hc; ++c) {
        q[static_cast<std::size_t>(r) * hc + c] =
            out[static_cast<std::size_t>(r0 + r) * cols + c0 + c];
      }
    }
    return Subband(hr, hc, std::move(q));
  };
  DecompositionLevel level;
  level.approx = quadrant(0, 0);       // low rows-filter, low cols-filter
  level.horizontal = quadrant(hr, 0);  // lowpass along rows, highpass along cols
  level.vertical = quadrant(0, hc);    // highpass along rows, lowpass along cols
  level.diagonal = quadrant(hr, hc);
  return level;
}

Subband Idwt2d(const DecompositionLevel& level) {
  const int hr = level.approx.rows();
  const int hc = level.approx.cols();
  for (const Subband* s : {&level.horizontal, &level.vertical, &level.diagonal}) {
    if (s->rows() != hr || s->cols() != hc) {
      throw DataError("subbands of one level must share dimensions");
    }
  }
  const int rows = 2 * hr;
  const int cols = 2 * hc;
  CheckLength(rows, "row count");
  CheckLength(cols, "column count");
  std::vector<double> packed(static_cast<std::size_t>(rows) * cols);
  auto place = [&](const Subband& s, int r0, int c0) {
    for (int r = 0; r < hr; ++r) {
      for (int c = 0; c < hc; ++c) {
        packed[static_cast<std::size_t>(r0 + r) * cols + c0 + c] = s.at(r, c);
      }
    }
  };
  place(level.approx, 0, 0);
  place(level.horizontal, hr, 0);
  place(level.vertical, 0, hc);
  place(level.diagonal, hr, hc);
  std::vector<double> tmp(packed.size());
  for (int c = 0; c < cols; ++c) {
    SynthesizeStrided(packed.data() + c,
                      packed.data() + static_cast<std::size_t>(hr) * cols + c,
                      hr, cols, tmp.data() + c, cols);
  }
  std::vector<double> out(packed.size());
  for (int r = 0; r < rows; ++r) {
    const double* in = tmp.data() + static_cast<std::size_t>(r) * cols;
    SynthesizeStrided(in, in + hc, hc, 1,
                      out.data() + static_cast<std::size_t>(r) * cols, 1);
  }
  return Subband(rows, cols, std::move(out));
}

WaveletPyramid Decompose(const Subband& mat, int levels) {
  if (levels < 1) throw ConfigError("decomposition needs at least one level");
  const int multiple = 1 << levels;
  if (mat.rows() % multiple != 0 || mat.cols() % multiple != 0) {
    throw DataError("dimensions " + std::to_string(mat.cols()) + "x" +
                    std::to_string(mat.rows()) + " must be multiples of " +
                    std::to_string(multiple) + " for " +
                    std::to_string(levels) + " decomposition levels");
  }
  WaveletPyramid pyramid;
  pyramid.levels.reserve(levels);
  pyramid.levels.push_back(Dwt2d(mat));
  for (int k = 1; k < levels; ++k) {
    pyramid.levels.push_back(Dwt2d(pyramid.levels.back().approx));
  }
  return pyramid;
}

WaveletPyramid Decompose(const GrayImage& img, int levels) {
  return Decompose(Subband::FromImage(img), levels);
}

Subband Reconstruct(const WaveletPyramid& pyramid) {
  if (pyramid.levels.empty()) throw DataError("empty pyramid");
  Subband approx = pyramid.levels.back().approx;
  for (auto it = pyramid.levels.rbegin(); it != pyramid.levels.rend(); ++it) {
    if (approx.rows() != it->approx.rows() || approx.cols() != it->approx.cols()) {
      throw DataError("pyramid level dimensions are inconsistent");
    }
    DecompositionLevel level = *it;
    level.approx = std::move(approx);
    approx = Idwt2d(level);
  }
  return approx;
}

const Subband& GetDetail(const DecompositionLevel& level, DetailBand band) {
  switch (band) {
    case DetailBand::kHorizontal:
      return level.horizontal;
    case DetailBand::kVertical:
      return level.vertical;
    case DetailBand::kDiagonal:
      return level.diagonal;
  }
  return level.diagonal;
}

DetailBand MaxVarianceDetailBand(const DecompositionLevel& level) {
  DetailBand best = DetailBand::kHorizontal;
  double best_var = -1.0;
  for (const DetailBand band : {DetailBand::kHorizontal, DetailBand::kVertical,
                                DetailBand::kDiagonal}) {
    const auto& c = GetDetail(level, band).coeffs();
    double mean = 0.0;
    for (const double v : c) mean += v;
    mean /= static_cast<double>(c.size());
    double var = 0.0;
    for (const double v : c) var += (v - mean) * (v - mean);
    var /= static_cast<double>(c.size());
    if (var > best_var) {
      best_var = var;
      best = band;
    }
  }
  return best;
}

const char* DetailBandName(DetailBand band) {
  switch (band) {
    case DetailBand::kHorizontal:
      return "H";
    case DetailBand::kVertical:
      return "V";
    case DetailBand::kDiagonal:
      return "D";
  }
  return "?";
}

}  // namespace wct
