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

#ifndef WCT_PIPELINE_H_
#define WCT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "wct/bpn.h"
#include "wct/eval.h"
#include "wct/features.h"
#include "wct/imaging.h"
#include "wct/manifest.h"
#include "wct/selection.h"
#include "wct/svm.h"
#include "wct/texture.h"

namespace wct {

enum class Domain { kWavelet, kGrayLevel };
enum class ClassifierKind { kSvm, kBpn };
enum class SelectionMode { kGa, kFixed, kAll };

std::string DomainName(Domain d);
Domain ParseDomain(const std::string& s);
std::string ClassifierName(ClassifierKind c);
ClassifierKind ParseClassifier(const std::string& s);
std::string SelectionModeName(SelectionMode m);
SelectionMode ParseSelectionMode(const std::string& s);

struct SelectionSpec {
  SelectionMode mode = SelectionMode::kGa;
  GaConfig ga;
  // 0-based feature indices for SelectionMode::kFixed.
  std::vector<std::size_t> fixed;
  // Folds of the internal cross-validation that measures J(X).
  int inner_folds = 5;
};

struct CvSpec {
  CvScheme scheme = CvScheme::kKFold;
  int k = 10;
  bool stratified = true;
};

// One experiment arm: feature domain, selection, classifier and CV plan.
struct ExperimentSpec {
  Domain domain = Domain::kWavelet;
  ClassifierKind classifier = ClassifierKind::kSvm;
  KernelSpec kernel = KernelSpec::Gaussian(1.0);
  SvmConfig svm;
  BpnConfig bpn;
  SelectionSpec selection;
  CvSpec cv;
  BlockSpec block;
  GlcmSpec glcm;
  WctOptions wct;
  std::uint64_t seed = 0;
  // Worker threads for image-level extraction and CV folds.
  std::size_t workers = 1;

  void Validate() const;
  // Technique label, e.g. "WT+SGLDM+GA+SVM" or "SGLDM+GA+BPN".
  std::string Name() const;
};

std::vector<std::string> FeatureNames(Domain domain, const WctOptions& wct);

// Features of a single block in the chosen domain.
FeatureVector ExtractBlockFeatures(const GrayImage& block, Domain domain,
                                   const GlcmSpec& glcm, const WctOptions& wct);

// Per-image vector: mean of the block vectors over the largest centered
// non-overlapping tiling.
FeatureVector ExtractImageFeatures(const GrayImage& img, Domain domain,
                                   const GlcmSpec& glcm, const WctOptions& wct,
                                   int block_size);

// Loads and extracts every manifest image (in parallel, ordered by manifest
// position). Errors name the image id and stage.
LabeledDataset ExtractDataset(const Manifest& manifest, const ExperimentSpec& spec);

// J(X): pooled accuracy of a stratified internal k-fold CV of a Gaussian SVM
// on the (already normalized) data restricted to `subset`.
double SubsetAccuracy(const LabeledDataset& normalized,
                      const std::vector<std::size_t>& subset, int inner_folds,
                      const SvmConfig& svm, std::uint64_t seed);

struct SelectionOutcome {
  std::vector<std::size_t> subset;
  std::optional<GaResult> ga;
};

// Chooses the feature subset on normalized training data according to
// spec.selection. `stream` names the RNG sub-stream (e.g. "fold3").
SelectionOutcome SelectFeatures(const LabeledDataset& normalized_train,
                                const ExperimentSpec& spec,
                                const std::string& stream);

// GA outcomes per (stream), shared between arms that see identical training
// data so the selection runs once.
class SelectionCache {
 public:
  std::optional<SelectionOutcome> Find(const std::string& key) const;
  void Store(const std::string& key, const SelectionOutcome& outcome);

 private:
  mutable std::mutex mu_;
  std::map<std::string, SelectionOutcome> entries_;
};

// Trained classifier together with the feature pathway it expects.
struct ModelBundle {
  Domain domain = Domain::kWavelet;
  GlcmSpec glcm;
  WctOptions wct;
  BlockSpec block;
  std::variant<SvmModel, BpnModel> model;
  BpnConfig bpn_config;  // echoed into the file for BPN models
  std::vector<std::string> feature_names;

  ClassifierKind classifier() const;
  const FeaturePathway& pathway() const;
  // Decision value (SVM) or sigmoid output (BPN) of a raw feature vector.
  double Score(const FeatureVector& raw) const;
  // Scores at or above this are abnormal.
  double Threshold() const;
  int Predict(const FeatureVector& raw) const;
};

inline constexpr int kModelFileVersion = 1;
nlohmann::json ToJson(const ModelBundle& bundle);
ModelBundle BundleFromJson(const nlohmann::json& j);
void WriteModelFile(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle ReadModelFile(const std::filesystem::path& path);

struct TrainOutcome {
  ModelBundle bundle;
  SelectionOutcome selection;
};

// Fits the normalizer, selects features and trains the classifier on raw
// training vectors.
TrainOutcome TrainModel(const LabeledDataset& raw_train,
                        const ExperimentSpec& spec, const std::string& stream,
                        SelectionCache* cache = nullptr);

struct ExperimentReport {
  ExperimentSpec spec;
  std::string name;
  std::vector<std::string> feature_names;
  std::vector<std::string> ids;
  std::vector<int> labels;
  CvPlan plan;
  CvResult cv;
  RocCurve roc;
  std::vector<std::vector<std::size_t>> fold_subsets;
  // Most frequent subset across folds (ties -> first seen).
  std::vector<std::size_t> modal_subset;
};

ExperimentReport RunExperimentOnDataset(const LabeledDataset& raw,
                                        const ExperimentSpec& spec,
                                        SelectionCache* cache = nullptr);
ExperimentReport RunExperiment(const Manifest& manifest,
                               const ExperimentSpec& spec);

// The four arms WT+SGLDM+GA+{SVM,BPN} and SGLDM+GA+{SVM,BPN}, sharing
// feature extraction and GA selection per domain. `base` supplies every
// setting except domain and classifier.
std::vector<ExperimentReport> RunComparison(const Manifest& manifest,
                                            const ExperimentSpec& base);

// Block-level labels over the BlockSpec tiling.
struct RegionMask {
  int image_width = 0;
  int image_height = 0;
  BlockSpec block;
  BlockGrid grid;
  std::vector<int> labels;      // row-major over the grid, +1 abnormal
  std::vector<double> scores;   // classifier score per block

  int at(int r, int c) const { return labels[static_cast<std::size_t>(r) * grid.cols + c]; }
};

RegionMask SegmentImage(const GrayImage& img, const ModelBundle& model,
                        const BlockSpec& block);
// Copy of the image with a 255-valued border drawn around abnormal blocks.
GrayImage RenderOverlay(const GrayImage& img, const RegionMask& mask);
// Binary image (255 = abnormal block) of the source dimensions.
GrayImage RenderMask(const RegionMask& mask);

}  // namespace wct

#endif  // WCT_PIPELINE_H_
