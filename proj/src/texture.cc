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

#include "wct/texture.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "wct/errors.h"
#include "wct/text.h"

namespace wct {

void GlcmSpec::Validate() const {
  if (distance < 1) throw ConfigError("GLCM distance must be >= 1");
  if (angles.empty()) throw ConfigError("GLCM needs at least one angle");
  std::set<GlcmAngle> seen(angles.begin(), angles.end());
  if (seen.size() != angles.size()) throw ConfigError("duplicate GLCM angle");
  if (levels < 2 || levels > 256) {
    throw ConfigError("GLCM levels must be in [2, 256]");
  }
}

Glcm::Glcm(int levels, std::vector<double> p)
    : levels_(levels), p_(std::move(p)) {
  if (levels < 1 || p_.size() != static_cast<std::size_t>(levels) * levels) {
    throw DataError("GLCM storage does not match levels x levels");
  }
}

std::array<double, kNumHaralick> WctFeatures::ToArray() const {
  return {entropy,     energy,          contrast, sum_average,     variance,
          correlation, max_probability, idm,      cluster_tendency};
}

const std::array<const char*, kNumHaralick>& HaralickNames() {
  static const std::array<const char*, kNumHaralick> names = {
      "ENT", "ENE", "CON", "SA", "VAR", "COR", "MP", "IDM", "CT"};
  return names;
}

std::pair<int, int> GlcmOffset(GlcmAngle angle, int distance) {
  switch (angle) {
    case GlcmAngle::k0:
      return {0, distance};
    case GlcmAngle::k45:
      return {-distance, distance};
    case GlcmAngle::k90:
      return {-distance, 0};
    case GlcmAngle::k135:
      return {-distance, -distance};
  }
  throw ConfigError("unknown GLCM angle");
}

QuantizedImage QuantizeSubband(const Subband& sb, int levels) {
  if (levels < 2) throw ConfigError("subband quantization needs >= 2 levels");
  const auto& c = sb.coeffs();
  for (const double v : c) {
    if (!std::isfinite(v)) throw DataError("non-finite subband coefficient");
  }
  const auto [lo_it, hi_it] = std::minmax_element(c.begin(), c.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::vector<int> values(c.size(), 0);
  if (range > 0.0) {
    const double scale = (levels - 1) / range;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int v = static_cast<int>(std::floor((c[i] - lo) * scale + 0.5));
      values[i] = std::clamp(v, 0, levels - 1);
    }
  }
  return QuantizedImage(sb.cols(), sb.rows(), levels, std::move(values));
}

namespace {

// Raw symmetric pair counts; returns the number of (unordered) pairs seen.
std::size_t AccumulatePairs(const QuantizedImage& q, int distance,
                            GlcmAngle angle, std::vector<double>& counts) {
  const auto [dr, dc] = GlcmOffset(angle, distance);
  const int g = q.levels();
  std::size_t pairs = 0;
  for (int r = std::max(0, -dr); r < q.height() && r + dr < q.height(); ++r) {
    for (int c = std::max(0, -dc); c < q.width() && c + dc < q.width(); ++c) {
      const int i = q.at(r, c);
      const int j = q.at(r + dr, c + dc);
      counts[static_cast<std::size_t>(i) * g + j] += 1.0;
      counts[static_cast<std::size_t>(j) * g + i] += 1.0;
      ++pairs;
    }
  }
  return pairs;
}

}  // namespace

Glcm GlcmSingle(const QuantizedImage& q, int distance, GlcmAngle angle) {
  if (distance < 1) throw ConfigError("GLCM distance must be >= 1");
  const int g = q.levels();
  std::vector<double> counts(static_cast<std::size_t>(g) * g, 0.0);
  const std::size_t pairs = AccumulatePairs(q, distance, angle, counts);
  if (pairs == 0) {
    throw DataError("no pixel pairs at distance " + std::to_string(distance) +
                    " for angle " + std::to_string(static_cast<int>(angle)) +
                    " in a " + std::to_string(q.width()) + "x" +
                    std::to_string(q.height()) + " image");
  }
  const double total = 2.0 * static_cast<double>(pairs);
  for (double& v : counts) v /= total;
  return Glcm(g, std::move(counts));
}

Glcm GlcmAveraged(const QuantizedImage& q, const GlcmSpec& spec) {
  spec.Validate();
  const int g = q.levels();
  std::vector<double> mean(static_cast<std::size_t>(g) * g, 0.0);
  for (const GlcmAngle angle : spec.angles) {
    const Glcm single = GlcmSingle(q, spec.distance, angle);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += single.p()[k];
  }
  const double n = static_cast<double>(spec.angles.size());
  for (double& v : mean) v /= n;
  return Glcm(g, std::move(mean));
}

WctFeatures Haralick(const Glcm& glcm) {
  const int g = glcm.levels();
  std::vector<double> px(g, 0.0);
  std::vector<double> py(g, 0.0);
  std::vector<double> p_sum(2 * g - 1, 0.0);
  WctFeatures f;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const double p = glcm.at(i, j);
      px[i] += p;
      py[j] += p;
      p_sum[i + j] += p;
      if (p > 0.0) f.entropy -= p * std::log2(p);
      f.energy += p * p;
      const double diff = static_cast<double>(i - j);
      f.contrast += diff * diff * p;
      f.idm += p / (1.0 + diff * diff);
      f.max_probability = std::max(f.max_probability, p);
    }
  }
  double mu_x = 0.0;
  double mu_y = 0.0;
  for (int i = 0; i < g; ++i) {
    mu_x += i * px[i];
    mu_y += i * py[i];
  }
  double var_x = 0.0;
  double var_y = 0.0;
  for (int i = 0; i < g; ++i) {
    var_x += (i - mu_x) * (i - mu_x) * px[i];
    var_y += (i - mu_y) * (i - mu_y) * py[i];
  }
  for (int k = 0; k < 2 * g - 1; ++k) f.sum_average += k * p_sum[k];
  const double mu = 0.5 * (mu_x + mu_y);
  double covariance = 0.0;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const double p = glcm.at(i, j);
      if (p == 0.0) continue;
      f.variance += (i - mu) * (i - mu) * p;
      covariance += (i - mu_x) * (j - mu_y) * p;
      const double t = i + j - mu_x - mu_y;
      f.cluster_tendency += t * t * p;
    }
  }
  const double spread = std::sqrt(var_x) * std::sqrt(var_y);
  f.correlation = spread > 1e-15 ? covariance / spread : 0.0;
  return f;
}

namespace {

void AppendBandFeatures(const Subband& band, const GlcmSpec& spec,
                        std::vector<double>& out) {
  const auto features =
      Haralick(GlcmAveraged(QuantizeSubband(band, spec.levels), spec));
  const auto values = features.ToArray();
  out.insert(out.end(), values.begin(), values.end());
}

}  // namespace

std::vector<double> ExtractWct(const GrayImage& block, const GlcmSpec& spec,
                               const WctOptions& options) {
  spec.Validate();
  const WaveletPyramid pyramid = Decompose(block, 2);
  std::vector<double> out;
  out.reserve(options.include_first_level ? 6 * kNumHaralick
                                          : 3 * kNumHaralick);
  for (const auto* level : {&pyramid.levels[1], &pyramid.levels[0]}) {
    AppendBandFeatures(level->horizontal, spec, out);
    AppendBandFeatures(level->vertical, spec, out);
    AppendBandFeatures(level->diagonal, spec, out);
    if (!options.include_first_level) break;
  }
  return out;
}

std::vector<double> ExtractGray(const GrayImage& block, const GlcmSpec& spec) {
  spec.Validate();
  const auto values =
      Haralick(GlcmAveraged(Quantize(block, spec.levels), spec)).ToArray();
  return {values.begin(), values.end()};
}

std::vector<std::string> WctFeatureNames(const WctOptions& options) {
  std::vector<std::string> names;
  const char* bands[] = {"H2", "V2", "D2", "H1", "V1", "D1"};
  const int num_bands = options.include_first_level ? 6 : 3;
  for (int b = 0; b < num_bands; ++b) {
    for (const char* f : HaralickNames()) {
      names.push_back(std::string(bands[b]) + "." + f);
    }
  }
  return names;
}

std::vector<std::string> GrayFeatureNames() {
  return {HaralickNames().begin(), HaralickNames().end()};
}

void WriteFeatureCsv(std::ostream& out, const std::vector<std::string>& ids,
                     const std::vector<std::string>& labels,
                     const std::vector<std::vector<double>>& vectors) {
  if (ids.size() != vectors.size() || labels.size() != vectors.size()) {
    throw DataError("feature CSV columns have different lengths");
  }
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().size();
  out << "block_id,label";
  for (std::size_t k = 0; k < dim; ++k) {
    out << ",f" << (k < 10 ? "0" : "") << k;
  }
  out << "\n";
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) {
      throw DataError("feature vectors have different dimensions");
    }
    out << ids[i] << "," << labels[i];
    for (const double v : vectors[i]) out << "," << FormatReal(v);
    out << "\n";
  }
}

}  // namespace wct
