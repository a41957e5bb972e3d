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

#include "wct/features.h"

#include <algorithm>
#include <cmath>

#include "wct/errors.h"

namespace wct {

std::size_t LabeledDataset::CountLabel(int label) const {
  return static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), label));
}

void LabeledDataset::Validate() const {
  if (labels.size() != vectors.size() || ids.size() != vectors.size()) {
    throw DataError("dataset columns have different lengths");
  }
  const std::size_t d = dim();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != d) {
      throw DataError("feature vector " + ids[i] + " has dimension " +
                      std::to_string(vectors[i].size()) + ", expected " +
                      std::to_string(d));
    }
    if (labels[i] != kAbnormal && labels[i] != kNormal) {
      throw DataError("label of " + ids[i] + " must be +1 or -1");
    }
    for (const double v : vectors[i]) {
      if (!std::isfinite(v)) {
        throw DataError("non-finite feature value in " + ids[i]);
      }
    }
  }
}

LabeledDataset LabeledDataset::Subset(
    const std::vector<std::size_t>& rows) const {
  LabeledDataset out;
  out.vectors.reserve(rows.size());
  out.labels.reserve(rows.size());
  out.ids.reserve(rows.size());
  for (const std::size_t r : rows) {
    out.vectors.push_back(vectors.at(r));
    out.labels.push_back(labels.at(r));
    out.ids.push_back(ids.at(r));
  }
  return out;
}

FeatureVector ProjectVector(const FeatureVector& v,
                            const std::vector<std::size_t>& columns) {
  FeatureVector out;
  out.reserve(columns.size());
  for (const std::size_t c : columns) {
    if (c >= v.size()) throw DataError("feature index out of range");
    out.push_back(v[c]);
  }
  return out;
}

LabeledDataset LabeledDataset::Project(
    const std::vector<std::size_t>& columns) const {
  LabeledDataset out;
  out.labels = labels;
  out.ids = ids;
  out.vectors.reserve(vectors.size());
  for (const auto& v : vectors) out.vectors.push_back(ProjectVector(v, columns));
  return out;
}

NormalizationParams FitNormalizer(const LabeledDataset& train) {
  if (train.size() == 0) throw DataError("cannot fit normalizer on no data");
  NormalizationParams params{train.vectors[0], train.vectors[0]};
  for (const auto& v : train.vectors) {
    if (v.size() != params.dim()) throw DataError("ragged training vectors");
    for (std::size_t k = 0; k < v.size(); ++k) {
      params.min[k] = std::min(params.min[k], v[k]);
      params.max[k] = std::max(params.max[k], v[k]);
    }
  }
  return params;
}

FeatureVector ApplyNormalizer(const NormalizationParams& params,
                              const FeatureVector& v) {
  if (v.size() != params.dim()) {
    throw DataError("vector dimension " + std::to_string(v.size()) +
                    " does not match normalizer dimension " +
                    std::to_string(params.dim()));
  }
  FeatureVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double lo = params.min[k];
    const double hi = params.max[k];
    out[k] = hi > lo ? (std::clamp(v[k], lo, hi) - lo) / (hi - lo) : 0.0;
  }
  return out;
}

LabeledDataset ApplyNormalizer(const NormalizationParams& params,
                               const LabeledDataset& data) {
  LabeledDataset out;
  out.labels = data.labels;
  out.ids = data.ids;
  out.vectors.reserve(data.size());
  for (const auto& v : data.vectors) {
    out.vectors.push_back(ApplyNormalizer(params, v));
  }
  return out;
}

FeatureVector FeaturePathway::Apply(const FeatureVector& raw) const {
  return ProjectVector(ApplyNormalizer(normalization, raw), subset);
}

nlohmann::json ToJson(const FeaturePathway& pathway) {
  return {{"normalization",
           {{"min", pathway.normalization.min},
            {"max", pathway.normalization.max}}},
          {"feature_subset", pathway.subset}};
}

FeaturePathway PathwayFromJson(const nlohmann::json& j) {
  FeaturePathway p;
  p.normalization.min = j.at("normalization").at("min").get<std::vector<double>>();
  p.normalization.max = j.at("normalization").at("max").get<std::vector<double>>();
  p.subset = j.at("feature_subset").get<std::vector<std::size_t>>();
  if (p.normalization.min.size() != p.normalization.max.size()) {
    throw DataError("normalization min/max lengths differ");
  }
  for (std::size_t k = 0; k < p.normalization.dim(); ++k) {
    if (p.normalization.min[k] > p.normalization.max[k]) {
      throw DataError("normalization min exceeds max");
    }
  }
  for (const std::size_t c : p.subset) {
    if (c >= p.normalization.dim()) throw DataError("feature subset out of range");
  }
  return p;
}

}  // namespace wct
