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

#include "wct/report.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "wct/errors.h"
#include "wct/selection.h"
#include "wct/text.h"

namespace wct {
namespace {

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  auto out = OpenOut(path);
  out << text;
}

std::string OneBased(const std::vector<std::size_t>& subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i > 0) out += ";";
    out += std::to_string(subset[i] + 1);
  }
  return out;
}

std::string Ratio(const std::optional<double>& r) {
  return r ? FormatReal(*r) : std::string();
}

PipelineConfig ArmConfig(const ExperimentReport& report, const PipelineConfig& config) {
  PipelineConfig c = config;
  c.experiment = report.spec;
  return c;
}

std::vector<std::vector<std::string>> MetricRows(const ExperimentReport& r) {
  const Metrics m = ComputeMetrics(r.cv.pooled);
  return {
      {"TP", std::to_string(r.cv.pooled.tp)},
      {"TN", std::to_string(r.cv.pooled.tn)},
      {"FP", std::to_string(r.cv.pooled.fp)},
      {"FN", std::to_string(r.cv.pooled.fn)},
      {"Sensitivity in %", Percent(m.sensitivity)},
      {"Specificity in %", Percent(m.specificity)},
      {"Accuracy in %", Percent(m.accuracy)},
  };
}

}  // namespace

std::string AlignedTable(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0) line += "  ";
      line += rows[r][c];
      if (c + 1 < rows[r].size()) line.append(width[c] - rows[r][c].size(), ' ');
    }
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c > 0 ? 2 : 0);
      out += std::string(total, '-') + "\n";
    }
  }
  return out;
}

std::string Percent(const std::optional<double>& ratio) {
  return ratio ? FormatFixed(100.0 * *ratio, 2) : std::string("n/a");
}

std::string ArmSlug(const std::string& name) {
  std::string out;
  for (const char ch : name) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string SubsetNames(const std::vector<std::size_t>& subset,
                        const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i > 0) out += ";";
    out += subset[i] < names.size() ? names[subset[i]] : "f" + std::to_string(subset[i]);
  }
  return out;
}

void WriteArmReport(const std::filesystem::path& dir, const ExperimentReport& report,
                    const PipelineConfig& config) {
  std::filesystem::create_directories(dir);
  const CvResult& cv = report.cv;
  const std::string echo = EchoConfig(ArmConfig(report, config));

  // metrics.csv
  {
    auto out = OpenOut(dir / "metrics.csv");
    const Metrics m = ComputeMetrics(cv.pooled);
    out << "parameter,value\n";
    out << "technique," << report.name << "\n";
    out << "n," << cv.pooled.total() << "\n";
    out << "tp," << cv.pooled.tp << "\n";
    out << "tn," << cv.pooled.tn << "\n";
    out << "fp," << cv.pooled.fp << "\n";
    out << "fn," << cv.pooled.fn << "\n";
    out << "sensitivity," << Ratio(m.sensitivity) << "\n";
    out << "specificity," << Ratio(m.specificity) << "\n";
    out << "pooled_accuracy," << FormatReal(cv.pooled_accuracy) << "\n";
    out << "mean_fold_accuracy," << FormatReal(cv.mean_fold_accuracy) << "\n";
    out << "auc," << FormatReal(report.roc.auc) << "\n";
    out << "selected_features," << SubsetNames(report.modal_subset, report.feature_names)
        << "\n";
    out << "selected_positions," << OneBased(report.modal_subset) << "\n";
  }

  // folds.csv
  {
    auto out = OpenOut(dir / "folds.csv");
    out << "fold,n_test,tp,tn,fp,fn,accuracy,sensitivity,specificity,features\n";
    for (const FoldResult& f : cv.folds) {
      out << f.fold << "," << f.n_test << "," << f.cm.tp << "," << f.cm.tn << ","
          << f.cm.fp << "," << f.cm.fn << "," << FormatReal(f.metrics.accuracy) << ","
          << Ratio(f.metrics.sensitivity) << "," << Ratio(f.metrics.specificity) << ","
          << SubsetNames(report.fold_subsets[f.fold], report.feature_names) << "\n";
    }
  }

  // scores.csv
  {
    auto out = OpenOut(dir / "scores.csv");
    out << "id,label,fold,score,prediction\n";
    for (std::size_t i = 0; i < report.ids.size(); ++i) {
      out << report.ids[i] << "," << LabelName(report.labels[i]) << ","
          << report.plan.fold_of[i] << "," << FormatReal(cv.scores[i]) << ","
          << LabelName(cv.predictions[i]) << "\n";
    }
  }

  // selection.csv
  {
    auto out = OpenOut(dir / "selection.csv");
    out << "fold,size,positions,features\n";
    for (std::size_t f = 0; f < report.fold_subsets.size(); ++f) {
      const auto& s = report.fold_subsets[f];
      out << f << "," << s.size() << "," << OneBased(s) << ","
          << SubsetNames(s, report.feature_names) << "\n";
    }
    out << "modal," << report.modal_subset.size() << "," << OneBased(report.modal_subset)
        << "," << SubsetNames(report.modal_subset, report.feature_names) << "\n";
  }

  {
    auto out = OpenOut(dir / "roc.csv");
    WriteRocCsv(out, report.roc);
  }
  {
    auto out = OpenOut(dir / "roc.svg");
    WriteRocSvg(out, {{report.name, report.roc}});
  }
  WriteText(dir / "config.txt", echo);

  // metrics.txt
  std::ostringstream txt;
  txt << report.name << " ("
      << (report.spec.cv.scheme == CvScheme::kLoocv
              ? std::string("leave-one-out")
              : std::to_string(report.spec.cv.k) + "-fold")
      << ", n = " << cv.pooled.total() << ")\n\n";
  auto rows = MetricRows(report);
  rows.insert(rows.begin(), {"Parameter", "Value"});
  rows.push_back({"Mean fold accuracy in %", Percent(cv.mean_fold_accuracy)});
  rows.push_back({"AUC", FormatFixed(report.roc.auc, 4)});
  txt << AlignedTable(rows) << "\n";
  txt << "Selected features (modal over folds): "
      << SubsetNames(report.modal_subset, report.feature_names) << " [positions "
      << OneBased(report.modal_subset) << "]\n\n";
  std::vector<std::vector<std::string>> fold_rows = {
      {"Fold", "N", "TP", "TN", "FP", "FN", "Accuracy %", "Features"}};
  for (const FoldResult& f : cv.folds) {
    fold_rows.push_back({std::to_string(f.fold), std::to_string(f.n_test),
                         std::to_string(f.cm.tp), std::to_string(f.cm.tn),
                         std::to_string(f.cm.fp), std::to_string(f.cm.fn),
                         Percent(f.metrics.accuracy),
                         SubsetNames(report.fold_subsets[f.fold], report.feature_names)});
  }
  txt << AlignedTable(fold_rows) << "\nConfiguration\n\n" << echo;
  WriteText(dir / "metrics.txt", txt.str());
}

void WriteComparisonCsv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << "si_no,technique,accuracy,auc,tp,tn,fp,fn,sensitivity,specificity,"
         "mean_fold_accuracy,selected_features\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ExperimentReport& r = reports[i];
    const Metrics m = ComputeMetrics(r.cv.pooled);
    out << i + 1 << "," << r.name << "," << FormatReal(r.cv.pooled_accuracy) << ","
        << FormatReal(r.roc.auc) << "," << r.cv.pooled.tp << "," << r.cv.pooled.tn << ","
        << r.cv.pooled.fp << "," << r.cv.pooled.fn << "," << Ratio(m.sensitivity) << ","
        << Ratio(m.specificity) << "," << FormatReal(r.cv.mean_fold_accuracy) << ","
        << SubsetNames(r.modal_subset, r.feature_names) << "\n";
  }
}

std::string ComparisonText(const std::vector<ExperimentReport>& reports) {
  std::vector<std::vector<std::string>> rows = {
      {"SI-No", "Technique", "Classification Accuracy", "AUC"}};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    rows.push_back({std::to_string(i + 1), reports[i].name,
                    Percent(reports[i].cv.pooled_accuracy) + "%",
                    FormatFixed(reports[i].roc.auc, 4)});
  }
  return AlignedTable(rows);
}

void WriteComparisonReport(const std::filesystem::path& dir,
                           const std::vector<ExperimentReport>& reports,
                           const PipelineConfig& config) {
  std::filesystem::create_directories(dir);
  for (const auto& r : reports) WriteArmReport(dir / ArmSlug(r.name), r, config);
  {
    auto out = OpenOut(dir / "compare.csv");
    WriteComparisonCsv(out, reports);
  }
  WriteText(dir / "compare.txt", ComparisonText(reports));

  // Domain-by-domain tables per classifier, and ROC plots per domain.
  std::map<ClassifierKind, std::vector<const ExperimentReport*>> by_classifier;
  std::map<Domain, std::vector<std::pair<std::string, RocCurve>>> by_domain;
  for (const auto& r : reports) {
    by_classifier[r.spec.classifier].push_back(&r);
    by_domain[r.spec.domain].emplace_back(r.name, r.roc);
  }
  for (const auto& [kind, arms] : by_classifier) {
    std::vector<std::vector<std::string>> rows = {{"Parameter"}};
    for (const auto* a : arms) {
      rows[0].push_back(a->spec.domain == Domain::kWavelet ? "Wavelet domain"
                                                           : "Gray level domain");
    }
    const std::size_t n_params = MetricRows(*arms.front()).size();
    for (std::size_t p = 0; p < n_params; ++p) rows.push_back({});
    for (std::size_t a = 0; a < arms.size(); ++a) {
      const auto metric = MetricRows(*arms[a]);
      for (std::size_t p = 0; p < n_params; ++p) {
        if (a == 0) rows[p + 1].push_back(metric[p][0]);
        rows[p + 1].push_back(metric[p][1]);
      }
    }
    const std::string stem = "table_" + ClassifierName(kind);
    WriteText(dir / (stem + ".txt"), AlignedTable(rows));
    auto out = OpenOut(dir / (stem + ".csv"));
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << "\n";
    }
  }
  for (const auto& [domain, curves] : by_domain) {
    auto out = OpenOut(dir / ("roc_" + DomainName(domain) + ".svg"));
    WriteRocSvg(out, curves);
  }
  WriteText(dir / "config.txt", EchoConfig(config));
}

}  // namespace wct
