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

#ifndef WCT_SVM_H_
#define WCT_SVM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "wct/features.h"

namespace wct {

struct KernelSpec {
  enum class Kind { kLinear, kPolynomial, kGaussian };

  Kind kind = Kind::kGaussian;
  int degree = 3;       // polynomial only
  double coef0 = 1.0;   // polynomial only
  double gamma = 1.0;   // gaussian only

  static KernelSpec Linear() { return {Kind::kLinear}; }
  static KernelSpec Polynomial(int degree = 3, double coef0 = 1.0) {
    return {Kind::kPolynomial, degree, coef0};
  }
  static KernelSpec Gaussian(double gamma = 1.0) {
    return {Kind::kGaussian, 3, 1.0, gamma};
  }

  void Validate() const;
  std::string Name() const;
};

KernelSpec::Kind ParseKernelKind(const std::string& name);

// linear: <x, y>; polynomial: (<x, y> + coef0)^degree;
// gaussian: exp(-gamma * |x - y|^2).
double KernelEval(const KernelSpec& k, const FeatureVector& x,
                  const FeatureVector& y);

struct SvmConfig {
  double c = 10.0;
  double tol = 1e-3;
  int max_passes = 20;
  std::uint64_t seed = 0;

  void Validate() const;
};

// f(x) = sum_i alpha_i y_i K(sv_i, x) + bias, over prepared (normalized,
// projected) vectors.
struct SvmModel {
  KernelSpec kernel;
  std::vector<FeatureVector> support_vectors;
  std::vector<double> alphas;
  std::vector<int> sv_labels;
  double bias = 0.0;
  FeaturePathway pathway;

  // Training metadata echoed into the model file.
  SvmConfig config;
  int iterations = 0;
  bool converged = false;

  std::size_t dim() const {
    return support_vectors.empty() ? 0 : support_vectors[0].size();
  }
};

// Sequential minimal optimization over prepared vectors. Two-variable
// analytic steps with box clipping; the second index maximizes |E1 - E2|
// over unbounded multipliers, falling back to seeded random sweeps. Stops
// when a full sweep finds every example within `tol` of its KKT condition,
// or after `max_passes` consecutive sweeps without objective progress.
// The returned model has an empty pathway; callers attach one.
SvmModel TrainSvm(const LabeledDataset& data, const KernelSpec& kernel,
                  const SvmConfig& config);

double DecisionValue(const SvmModel& m, const FeatureVector& x);
// sign(DecisionValue); exactly 0 maps to +1.
int Predict(const SvmModel& m, const FeatureVector& x);

// Raw feature vector through the model's pathway.
double DecisionValueRaw(const SvmModel& m, const FeatureVector& raw);

// |W|^2 of the separating hyperplane in kernel space.
double WeightNormSquared(const SvmModel& m);
double DualObjective(const SvmModel& m);
double DualConstraintResidual(const SvmModel& m);

inline constexpr int kSvmModelVersion = 1;
nlohmann::json ToJson(const SvmModel& m);
SvmModel SvmFromJson(const nlohmann::json& j);

}  // namespace wct

#endif  // WCT_SVM_H_
