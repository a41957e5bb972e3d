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

#ifndef WCT_EVAL_H_
#define WCT_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wct/features.h"

namespace wct {

// Abnormal (+1) is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o);
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix Confusion(const std::vector<int>& predictions,
                          const std::vector<int>& labels);

// A ratio with a zero denominator is absent rather than 0.
struct Metrics {
  std::optional<double> sensitivity;  // TP / (TP + FN)
  std::optional<double> specificity;  // TN / (FP + TN)
  double accuracy = 0.0;              // (TP + TN) / total
};

// Throws DataError for an all-zero matrix.
Metrics ComputeMetrics(const ConfusionMatrix& cm);

struct RocPoint {
  double threshold = 0.0;  // +inf for the first point
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// Thresholds swept over the distinct scores in descending order; a case is
// called positive when score >= threshold. Tied scores move together, so the
// trapezoid area equals the Mann-Whitney statistic with ties counted 1/2.
// Throws DataError unless both classes are present.
RocCurve Roc(const std::vector<double>& scores, const std::vector<int>& labels);

void WriteRocCsv(std::ostream& out, const RocCurve& roc);
// Standalone SVG plot of one or more labeled curves.
void WriteRocSvg(std::ostream& out,
                 const std::vector<std::pair<std::string, RocCurve>>& curves);

enum class CvScheme { kKFold, kLoocv };

struct CvPlan {
  CvScheme scheme = CvScheme::kKFold;
  int k = 10;
  bool stratified = true;
  std::uint64_t seed = 0;
  // fold_of[i] is the held-out fold of case i.
  std::vector<int> fold_of;

  int num_folds() const { return k; }
  std::vector<std::size_t> TestRows(int fold) const;
  std::vector<std::size_t> TrainRows(int fold) const;
};

// Seeded shuffle, then round-robin fold assignment. When stratified, each
// class is dealt separately (continuing the rotation across classes) and
// every class must have at least k members.
CvPlan KFoldPlan(const std::vector<int>& labels, int k, std::uint64_t seed,
                 bool stratified = true);
// One fold per case, fold i holds case i.
CvPlan LoocvPlan(std::size_t n);

// Trained classifier for one fold: raw feature vector -> score, and the
// score at or above which a case is called abnormal.
struct Scorer {
  std::function<double(const FeatureVector&)> score;
  double threshold = 0.0;
};

// Trains on the raw training split of a fold (fitting its own normalizer)
// and returns a scorer. Must be deterministic.
using Trainer = std::function<Scorer(const LabeledDataset& train, int fold)>;

struct FoldResult {
  int fold = 0;
  ConfusionMatrix cm;
  Metrics metrics;
  std::size_t n_test = 0;
};

struct CvResult {
  std::vector<FoldResult> folds;
  ConfusionMatrix pooled;
  // Pooled correct / n.
  double pooled_accuracy = 0.0;
  // Mean of per-fold accuracies.
  double mean_fold_accuracy = 0.0;
  // Out-of-fold score and prediction of every case, in dataset order.
  std::vector<double> scores;
  std::vector<int> predictions;
};

// Throws DataError if a training split lacks one of the classes. Folds may
// be trained on `workers` threads; results are aggregated in fold order.
CvResult CrossValidate(const LabeledDataset& data, const CvPlan& plan,
                       const Trainer& trainer, std::size_t workers = 1);

}  // namespace wct

#endif  // WCT_EVAL_H_
