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

#ifndef WCT_REPORT_H_
#define WCT_REPORT_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wct/config.h"
#include "wct/pipeline.h"

namespace wct {

// Fixed-width plain-text table; the first row is the header.
std::string AlignedTable(const std::vector<std::vector<std::string>>& rows);

// Percentage with two decimals, or "n/a" for an absent ratio.
std::string Percent(const std::optional<double>& ratio);

// "wt_sgldm_ga_svm" for "WT+SGLDM+GA+SVM".
std::string ArmSlug(const std::string& name);

// Feature names of a 0-based subset joined by ';'.
std::string SubsetNames(const std::vector<std::size_t>& subset,
                        const std::vector<std::string>& names);

// Writes metrics.txt, metrics.csv, folds.csv, scores.csv, selection.csv,
// roc.csv, roc.svg and config.txt for one arm into `dir` (created if
// needed). `config` supplies the non-experiment settings of the echo.
void WriteArmReport(const std::filesystem::path& dir, const ExperimentReport& report,
                    const PipelineConfig& config);

// Comparison table (one row per arm) as CSV and aligned text.
void WriteComparisonCsv(std::ostream& out, const std::vector<ExperimentReport>& reports);
std::string ComparisonText(const std::vector<ExperimentReport>& reports);

// Everything for a `compare` run: one sub-directory per arm, compare.csv,
// compare.txt, per-classifier domain tables and per-domain ROC plots.
void WriteComparisonReport(const std::filesystem::path& dir,
                           const std::vector<ExperimentReport>& reports,
                           const PipelineConfig& config);

}  // namespace wct

#endif  // WCT_REPORT_H_
