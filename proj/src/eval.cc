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

#include "wct/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wct/errors.h"
#include "wct/parallel.h"
#include "wct/rng.h"
#include "wct/text.h"

namespace wct {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
  tp += o.tp;
  tn += o.tn;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

ConfusionMatrix Confusion(const std::vector<int>& predictions,
                          const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) {
    throw DataError("predictions and labels have different lengths");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted_positive = predictions[i] == kAbnormal;
    if (labels[i] == kAbnormal) {
      predicted_positive ? ++cm.tp : ++cm.fn;
    } else {
      predicted_positive ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

Metrics ComputeMetrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DataError("metrics of an empty confusion matrix");
  Metrics m;
  if (cm.tp + cm.fn > 0) {
    m.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  }
  if (cm.fp + cm.tn > 0) {
    m.specificity = static_cast<double>(cm.tn) / static_cast<double>(cm.fp + cm.tn);
  }
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  return m;
}

RocCurve Roc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw DataError("scores and labels have different lengths");
  }
  std::size_t positives = 0;
  for (const int l : labels) positives += l == kAbnormal;
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw DataError("ROC needs both positive and negative cases");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  RocCurve roc;
  roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      labels[order[i]] == kAbnormal ? ++tp : ++fp;
      ++i;
    }
    roc.points.push_back({threshold, static_cast<double>(fp) / negatives,
                          static_cast<double>(tp) / positives});
  }
  for (std::size_t p = 1; p < roc.points.size(); ++p) {
    const auto& prev = roc.points[p - 1];
    const auto& cur = roc.points[p];
    roc.auc += (cur.fpr - prev.fpr) * (cur.tpr + prev.tpr) / 2.0;
  }
  return roc;
}

void WriteRocCsv(std::ostream& out, const RocCurve& roc) {
  out << "threshold,fpr,tpr\n";
  for (const auto& p : roc.points) {
    out << FormatReal(p.threshold) << "," << FormatReal(p.fpr) << ","
        << FormatReal(p.tpr) << "\n";
  }
}

void WriteRocSvg(std::ostream& out,
                 const std::vector<std::pair<std::string, RocCurve>>& curves) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  const double size = 400.0;
  const double margin = 50.0;
  auto sx = [&](double fpr) { return FormatFixed(margin + fpr * size, 2); };
  auto sy = [&](double tpr) { return FormatFixed(margin + (1.0 - tpr) * size, 2); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << FormatFixed(size + 2 * margin + 160, 0) << "\" height=\""
      << FormatFixed(size + 2 * margin, 0) << "\">\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size
      << "\" height=\"" << size << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(1)
      << "\" y2=\"" << sy(1)
      << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
  for (int t = 0; t <= 10; t += 2) {
    const double v = t / 10.0;
    out << "<text x=\"" << sx(v) << "\" y=\"" << FormatFixed(margin + size + 18, 2)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << FormatFixed(v, 1)
        << "</text>\n";
    out << "<text x=\"" << FormatFixed(margin - 8, 2) << "\" y=\"" << sy(v)
        << "\" font-size=\"11\" text-anchor=\"end\">" << FormatFixed(v, 1)
        << "</text>\n";
  }
  out << "<text x=\"" << FormatFixed(margin + size / 2, 2) << "\" y=\""
      << FormatFixed(margin + size + 40, 2)
      << "\" font-size=\"13\" text-anchor=\"middle\">1 - specificity</text>\n";
  out << "<text x=\"15\" y=\"" << FormatFixed(margin + size / 2, 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << FormatFixed(margin + size / 2, 2) << ")\">sensitivity</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : curves[c].second.points) {
      out << sx(p.fpr) << "," << sy(p.tpr) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << FormatFixed(margin + size + 10, 2) << "\" y=\""
        << FormatFixed(margin + 15 + 18.0 * c, 2) << "\" font-size=\"12\" fill=\""
        << color << "\">" << curves[c].first << " (AUC "
        << FormatFixed(curves[c].second.auc, 3) << ")</text>\n";
  }
  out << "</svg>\n";
}

std::vector<std::size_t> CvPlan::TestRows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> CvPlan::TrainRows(int fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) rows.push_back(i);
  }
  return rows;
}

namespace {

void Shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.UniformIndex(i)]);
  }
}

}  // namespace

CvPlan KFoldPlan(const std::vector<int>& labels, int k, std::uint64_t seed,
                 bool stratified) {
  if (k < 2) throw ConfigError("k-fold needs k >= 2");
  if (labels.size() < static_cast<std::size_t>(k)) {
    throw DataError("k-fold with k=" + std::to_string(k) + " over only " +
                    std::to_string(labels.size()) + " cases");
  }
  CvPlan plan;
  plan.scheme = CvScheme::kKFold;
  plan.k = k;
  plan.stratified = stratified;
  plan.seed = seed;
  plan.fold_of.assign(labels.size(), -1);
  Rng rng(DeriveSeed(seed, "folds"));
  std::vector<std::vector<std::size_t>> groups;
  if (stratified) {
    for (const int cls : {kAbnormal, kNormal}) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == cls) members.push_back(i);
      }
      if (members.size() < static_cast<std::size_t>(k)) {
        throw DataError("class " + std::to_string(cls) + " has " +
                        std::to_string(members.size()) +
                        " cases, fewer than k=" + std::to_string(k));
      }
      groups.push_back(std::move(members));
    }
  } else {
    groups.emplace_back(labels.size());
    std::iota(groups[0].begin(), groups[0].end(), 0);
  }
  std::size_t next_fold = 0;
  for (auto& group : groups) {
    Shuffle(group, rng);
    for (const std::size_t i : group) {
      plan.fold_of[i] = static_cast<int>(next_fold);
      next_fold = (next_fold + 1) % k;
    }
  }
  return plan;
}

CvPlan LoocvPlan(std::size_t n) {
  if (n < 2) throw DataError("leave-one-out needs at least two cases");
  CvPlan plan;
  plan.scheme = CvScheme::kLoocv;
  plan.k = static_cast<int>(n);
  plan.stratified = false;
  plan.fold_of.resize(n);
  std::iota(plan.fold_of.begin(), plan.fold_of.end(), 0);
  return plan;
}

CvResult CrossValidate(const LabeledDataset& data, const CvPlan& plan,
                       const Trainer& trainer, std::size_t workers) {
  data.Validate();
  if (plan.fold_of.size() != data.size()) {
    throw DataError("CV plan covers " + std::to_string(plan.fold_of.size()) +
                    " cases, dataset has " + std::to_string(data.size()));
  }
  const int k = plan.num_folds();
  CvResult result;
  result.scores.assign(data.size(), 0.0);
  result.predictions.assign(data.size(), 0);
  std::vector<FoldResult> folds(k);
  ParallelFor(
      static_cast<std::size_t>(k),
      [&](std::size_t f) {
        const int fold = static_cast<int>(f);
        const auto test_rows = plan.TestRows(fold);
        const LabeledDataset train = data.Subset(plan.TrainRows(fold));
        if (train.CountLabel(kAbnormal) == 0 || train.CountLabel(kNormal) == 0) {
          throw DataError("training split of fold " + std::to_string(fold) +
                          " has a single class");
        }
        const Scorer scorer = trainer(train, fold);
        std::vector<int> preds;
        std::vector<int> truth;
        for (const std::size_t i : test_rows) {
          const double s = scorer.score(data.vectors[i]);
          result.scores[i] = s;
          result.predictions[i] = s >= scorer.threshold ? kAbnormal : kNormal;
          preds.push_back(result.predictions[i]);
          truth.push_back(data.labels[i]);
        }
        folds[f].fold = fold;
        folds[f].n_test = test_rows.size();
        folds[f].cm = Confusion(preds, truth);
        if (folds[f].n_test > 0) folds[f].metrics = ComputeMetrics(folds[f].cm);
      },
      workers);
  double acc_sum = 0.0;
  int non_empty = 0;
  for (const auto& f : folds) {
    result.pooled += f.cm;
    if (f.n_test > 0) {
      acc_sum += f.metrics.accuracy;
      ++non_empty;
    }
  }
  result.folds = std::move(folds);
  result.pooled_accuracy = ComputeMetrics(result.pooled).accuracy;
  result.mean_fold_accuracy = non_empty > 0 ? acc_sum / non_empty : 0.0;
  return result;
}

}  // namespace wct
