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

#ifndef WCT_TEXTURE_H_
#define WCT_TEXTURE_H_

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "wct/imaging.h"
#include "wct/wavelet.h"

namespace wct {

enum class GlcmAngle { k0 = 0, k45 = 45, k90 = 90, k135 = 135 };

struct GlcmSpec {
  int distance = 1;
  std::vector<GlcmAngle> angles = {GlcmAngle::k0, GlcmAngle::k45,
                                   GlcmAngle::k90, GlcmAngle::k135};
  int levels = 64;

  // Throws ConfigError on distance < 1, empty or duplicated angles, or
  // levels outside [2, 256].
  void Validate() const;
};

// Normalized symmetric gray-level co-occurrence matrix.
class Glcm {
 public:
  Glcm(int levels, std::vector<double> p);

  int levels() const { return levels_; }
  const std::vector<double>& p() const { return p_; }
  double at(int i, int j) const {
    return p_[static_cast<std::size_t>(i) * levels_ + j];
  }

 private:
  int levels_;
  std::vector<double> p_;
};

inline constexpr int kNumHaralick = 9;

// The nine second-order statistics, stored in table order:
// ENT, ENE, CON, SA, VAR, COR, MP, IDM, CT.
struct WctFeatures {
  double entropy = 0.0;
  double energy = 0.0;
  double contrast = 0.0;
  double sum_average = 0.0;
  double variance = 0.0;
  double correlation = 0.0;
  double max_probability = 0.0;
  double idm = 0.0;
  double cluster_tendency = 0.0;

  std::array<double, kNumHaralick> ToArray() const;
};

// Short names in feature order ("ENT", "ENE", ...).
const std::array<const char*, kNumHaralick>& HaralickNames();

// (row, col) displacement for an angle at a distance: 0 -> (0, d),
// 45 -> (-d, d), 90 -> (-d, 0), 135 -> (-d, -d).
std::pair<int, int> GlcmOffset(GlcmAngle angle, int distance);

// Min-max rescale of the coefficients onto [0, levels - 1], rounding half
// up. A constant subband maps to all zeros.
QuantizedImage QuantizeSubband(const Subband& sb, int levels);

// Symmetric co-occurrence counts for one displacement, normalized to sum 1.
// Throws DataError when no pixel pair fits inside the image.
Glcm GlcmSingle(const QuantizedImage& q, int distance, GlcmAngle angle);

// Element-wise mean of GlcmSingle over spec.angles.
Glcm GlcmAveraged(const QuantizedImage& q, const GlcmSpec& spec);

// Haralick statistics of a normalized GLCM. Entropy is in bits. Correlation
// is reported as 0 when either marginal has zero spread. Cluster tendency is
// the second-order cluster moment sum (i + j - mu_x - mu_y)^2 p(i, j).
WctFeatures Haralick(const Glcm& glcm);

// Options for the wavelet-domain extractor.
struct WctOptions {
  // Also append features of the first-level detail bands (H1, V1, D1).
  bool include_first_level = false;
};

// Wavelet-domain features of one block: two-level db2 decomposition, then
// for each of H2, V2, D2 the quantized averaged GLCM and its nine Haralick
// statistics. Layout: index = 9 * band + feature (H2, V2, D2), followed by
// H1, V1, D1 when enabled.
std::vector<double> ExtractWct(const GrayImage& block, const GlcmSpec& spec,
                               const WctOptions& options = {});

// Gray-level-domain features: quantize the block to spec.levels, averaged
// GLCM, nine Haralick statistics.
std::vector<double> ExtractGray(const GrayImage& block, const GlcmSpec& spec);

// Column names of ExtractWct / ExtractGray output, e.g. "H2.ENT".
std::vector<std::string> WctFeatureNames(const WctOptions& options = {});
std::vector<std::string> GrayFeatureNames();

// CSV with header "block_id,label,f00,f01,..." and 17-significant-digit
// values.
void WriteFeatureCsv(std::ostream& out, const std::vector<std::string>& ids,
                     const std::vector<std::string>& labels,
                     const std::vector<std::vector<double>>& vectors);

}  // namespace wct

#endif  // WCT_TEXTURE_H_
