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

#ifndef WCT_FEATURES_H_
#define WCT_FEATURES_H_

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace wct {

using FeatureVector = std::vector<double>;

// Label convention: +1 = abnormal (positive class), -1 = normal.
inline constexpr int kAbnormal = 1;
inline constexpr int kNormal = -1;

struct LabeledDataset {
  std::vector<FeatureVector> vectors;
  std::vector<int> labels;
  std::vector<std::string> ids;

  std::size_t size() const { return vectors.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors[0].size(); }
  std::size_t CountLabel(int label) const;

  // Throws DataError on length mismatch, ragged vectors, labels other than
  // +-1, or non-finite values.
  void Validate() const;

  // Rows at `rows`, in that order.
  LabeledDataset Subset(const std::vector<std::size_t>& rows) const;
  // Same rows restricted to the given columns.
  LabeledDataset Project(const std::vector<std::size_t>& columns) const;
};

FeatureVector ProjectVector(const FeatureVector& v,
                            const std::vector<std::size_t>& columns);

struct NormalizationParams {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t dim() const { return min.size(); }
};

// Column-wise min and max over the training vectors.
NormalizationParams FitNormalizer(const LabeledDataset& train);

// (clamp(v, min, max) - min) / (max - min) per column; 0 for columns with
// max == min.
FeatureVector ApplyNormalizer(const NormalizationParams& params,
                              const FeatureVector& v);
LabeledDataset ApplyNormalizer(const NormalizationParams& params,
                               const LabeledDataset& data);

// Raw vector -> normalized -> projected onto the selected columns. Stored in
// every model so prediction never re-fits.
struct FeaturePathway {
  NormalizationParams normalization;
  std::vector<std::size_t> subset;

  FeatureVector Apply(const FeatureVector& raw) const;
};

nlohmann::json ToJson(const FeaturePathway& pathway);
FeaturePathway PathwayFromJson(const nlohmann::json& j);

}  // namespace wct

#endif  // WCT_FEATURES_H_
