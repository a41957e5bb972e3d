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

#include "wct/pipeline.h"

#include <algorithm>
#include <fstream>
#include <memory>

#include "wct/errors.h"
#include "wct/parallel.h"
#include "wct/rng.h"

namespace wct {

std::string DomainName(Domain d) {
  return d == Domain::kWavelet ? "wavelet" : "graylevel";
}

Domain ParseDomain(const std::string& s) {
  if (s == "wavelet") return Domain::kWavelet;
  if (s == "graylevel") return Domain::kGrayLevel;
  throw ConfigError("unknown domain '" + s + "' (wavelet|graylevel)");
}

std::string ClassifierName(ClassifierKind c) {
  return c == ClassifierKind::kSvm ? "svm" : "bpn";
}

ClassifierKind ParseClassifier(const std::string& s) {
  if (s == "svm") return ClassifierKind::kSvm;
  if (s == "bpn") return ClassifierKind::kBpn;
  throw ConfigError("unknown classifier '" + s + "' (svm|bpn)");
}

std::string SelectionModeName(SelectionMode m) {
  switch (m) {
    case SelectionMode::kGa:
      return "ga";
    case SelectionMode::kFixed:
      return "fixed";
    case SelectionMode::kAll:
      return "all";
  }
  return "?";
}

SelectionMode ParseSelectionMode(const std::string& s) {
  if (s == "ga") return SelectionMode::kGa;
  if (s == "fixed") return SelectionMode::kFixed;
  if (s == "all") return SelectionMode::kAll;
  throw ConfigError("unknown selection mode '" + s + "' (ga|fixed|all)");
}

void ExperimentSpec::Validate() const {
  kernel.Validate();
  svm.Validate();
  bpn.Validate();
  block.Validate();
  glcm.Validate();
  if (selection.mode == SelectionMode::kGa) selection.ga.Validate();
  if (selection.mode == SelectionMode::kFixed && selection.fixed.empty()) {
    throw ConfigError("fixed selection needs at least one feature index");
  }
  if (selection.inner_folds < 2) throw ConfigError("inner_folds must be >= 2");
  if (cv.scheme == CvScheme::kKFold && cv.k < 2) throw ConfigError("cv.k must be >= 2");
  if (domain == Domain::kWavelet && block.block_size % 4 != 0) {
    throw ConfigError("wavelet features need block_size divisible by 4");
  }
  if (domain == Domain::kWavelet && block.block_size < 16) {
    // Level-2 subbands must be at least 4x4 for two DWT levels.
    throw ConfigError("wavelet features need block_size >= 16");
  }
}

std::string ExperimentSpec::Name() const {
  std::string name = domain == Domain::kWavelet ? "WT+SGLDM" : "SGLDM";
  switch (selection.mode) {
    case SelectionMode::kGa:
      name += "+GA";
      break;
    case SelectionMode::kFixed:
      name += "+FIXED";
      break;
    case SelectionMode::kAll:
      break;
  }
  name += classifier == ClassifierKind::kSvm ? "+SVM" : "+BPN";
  if (classifier == ClassifierKind::kSvm && kernel.kind != KernelSpec::Kind::kGaussian) {
    name += "(" + kernel.Name() + ")";
  }
  return name;
}

std::vector<std::string> FeatureNames(Domain domain, const WctOptions& wct) {
  return domain == Domain::kWavelet ? WctFeatureNames(wct) : GrayFeatureNames();
}

FeatureVector ExtractBlockFeatures(const GrayImage& block, Domain domain,
                                   const GlcmSpec& glcm, const WctOptions& wct) {
  return domain == Domain::kWavelet ? ExtractWct(block, glcm, wct)
                                    : ExtractGray(block, glcm);
}

FeatureVector ExtractImageFeatures(const GrayImage& img, Domain domain,
                                   const GlcmSpec& glcm, const WctOptions& wct,
                                   int block_size) {
  const auto tiles = ExtractCenteredTiles(img, block_size);
  FeatureVector mean;
  for (const auto& tile : tiles) {
    const FeatureVector v = ExtractBlockFeatures(tile, domain, glcm, wct);
    if (mean.empty()) mean.assign(v.size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) mean[k] += v[k];
  }
  for (double& x : mean) x /= static_cast<double>(tiles.size());
  return mean;
}

LabeledDataset ExtractDataset(const Manifest& manifest, const ExperimentSpec& spec) {
  manifest.Validate();
  const std::size_t n = manifest.entries.size();
  LabeledDataset data;
  data.vectors.resize(n);
  data.labels.resize(n);
  data.ids.resize(n);
  ParallelFor(
      n,
      [&](std::size_t i) {
        const auto& e = manifest.entries[i];
        GrayImage img;
        try {
          img = ReadPgmFile(e.path);
        } catch (const std::exception& ex) {
          throw DataError("image " + e.id + ", stage load: " + ex.what());
        }
        try {
          data.vectors[i] = ExtractImageFeatures(img, spec.domain, spec.glcm,
                                                 spec.wct, spec.block.block_size);
        } catch (const std::exception& ex) {
          throw DataError("image " + e.id + ", stage extract: " + ex.what());
        }
        data.labels[i] = e.label;
        data.ids[i] = e.id;
      },
      spec.workers);
  data.Validate();
  return data;
}

double SubsetAccuracy(const LabeledDataset& normalized,
                      const std::vector<std::size_t>& subset, int inner_folds,
                      const SvmConfig& svm, std::uint64_t seed) {
  if (subset.empty()) throw DataError("J(X) of an empty feature subset");
  const LabeledDataset projected = normalized.Project(subset);
  const std::size_t smallest = std::min(projected.CountLabel(kAbnormal),
                                        projected.CountLabel(kNormal));
  const int k = static_cast<int>(std::min<std::size_t>(inner_folds, smallest));
  if (k < 2) throw DataError("J(X) needs at least two cases per class");
  const CvPlan plan = KFoldPlan(projected.labels, k, seed, true);
  SvmConfig cfg = svm;
  cfg.seed = DeriveSeed(seed, "svm");
  const KernelSpec kernel = KernelSpec::Gaussian(1.0);
  const CvResult cv = CrossValidate(projected, plan, [&](const LabeledDataset& train, int) {
    auto model = std::make_shared<SvmModel>(TrainSvm(train, kernel, cfg));
    return Scorer{[model](const FeatureVector& x) { return DecisionValue(*model, x); },
                  0.0};
  });
  return cv.pooled_accuracy;
}

SelectionOutcome SelectFeatures(const LabeledDataset& normalized_train,
                                const ExperimentSpec& spec,
                                const std::string& stream) {
  const std::size_t dim = normalized_train.dim();
  SelectionOutcome out;
  switch (spec.selection.mode) {
    case SelectionMode::kAll:
      for (std::size_t k = 0; k < dim; ++k) out.subset.push_back(k);
      return out;
    case SelectionMode::kFixed:
      for (const std::size_t k : spec.selection.fixed) {
        if (k >= dim) {
          throw ConfigError("fixed feature index " + std::to_string(k) +
                            " out of range for dimension " + std::to_string(dim));
        }
      }
      out.subset = spec.selection.fixed;
      return out;
    case SelectionMode::kGa:
      break;
  }
  GaConfig ga = spec.selection.ga;
  ga.seed = DeriveSeed(spec.seed, "ga/" + stream);
  const std::uint64_t inner_seed = DeriveSeed(spec.seed, "inner/" + stream);
  const SubsetEvaluator evaluator = [&](const std::vector<std::size_t>& subset) {
    return SubsetAccuracy(normalized_train, subset, spec.selection.inner_folds,
                          spec.svm, inner_seed);
  };
  GaResult result = RunGa(dim, ga, evaluator);
  out.subset = Decode(result.best.chromosome);
  out.ga = std::move(result);
  return out;
}

std::optional<SelectionOutcome> SelectionCache::Find(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void SelectionCache::Store(const std::string& key, const SelectionOutcome& outcome) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.emplace(key, outcome);
}

ClassifierKind ModelBundle::classifier() const {
  return std::holds_alternative<SvmModel>(model) ? ClassifierKind::kSvm
                                                 : ClassifierKind::kBpn;
}

const FeaturePathway& ModelBundle::pathway() const {
  if (const auto* svm = std::get_if<SvmModel>(&model)) return svm->pathway;
  return std::get<BpnModel>(model).pathway;
}

double ModelBundle::Score(const FeatureVector& raw) const {
  if (const auto* svm = std::get_if<SvmModel>(&model)) {
    return DecisionValueRaw(*svm, raw);
  }
  return ScoreBpnRaw(std::get<BpnModel>(model), raw);
}

double ModelBundle::Threshold() const {
  return classifier() == ClassifierKind::kSvm ? 0.0 : 0.5;
}

int ModelBundle::Predict(const FeatureVector& raw) const {
  return Score(raw) >= Threshold() ? kAbnormal : kNormal;
}

nlohmann::json ToJson(const ModelBundle& b) {
  nlohmann::json angles = nlohmann::json::array();
  for (const auto a : b.glcm.angles) angles.push_back(static_cast<int>(a));
  nlohmann::json j = {
      {"format", "wct-model"},
      {"version", kModelFileVersion},
      {"domain", DomainName(b.domain)},
      {"classifier", ClassifierName(b.classifier())},
      {"glcm", {{"distance", b.glcm.distance}, {"angles", angles}, {"levels", b.glcm.levels}}},
      {"wct", {{"include_first_level", b.wct.include_first_level}}},
      {"block", {{"block_size", b.block.block_size}, {"stride", b.block.stride}}},
      {"feature_names", b.feature_names}};
  if (const auto* svm = std::get_if<SvmModel>(&b.model)) {
    j["svm"] = ToJson(*svm);
  } else {
    j["bpn"] = ToJson(std::get<BpnModel>(b.model), b.bpn_config);
  }
  return j;
}

ModelBundle BundleFromJson(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "wct-model") throw DataError("not a wct model file");
    if (j.at("version").get<int>() != kModelFileVersion) {
      throw DataError("unsupported model file version");
    }
    ModelBundle b;
    b.domain = ParseDomain(j.at("domain").get<std::string>());
    const auto& g = j.at("glcm");
    b.glcm.distance = g.at("distance").get<int>();
    b.glcm.levels = g.at("levels").get<int>();
    b.glcm.angles.clear();
    for (const int a : g.at("angles").get<std::vector<int>>()) {
      if (a != 0 && a != 45 && a != 90 && a != 135) throw DataError("bad GLCM angle");
      b.glcm.angles.push_back(static_cast<GlcmAngle>(a));
    }
    b.glcm.Validate();
    b.wct.include_first_level = j.at("wct").at("include_first_level").get<bool>();
    b.block.block_size = j.at("block").at("block_size").get<int>();
    b.block.stride = j.at("block").at("stride").get<int>();
    b.block.Validate();
    b.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    const auto kind = ParseClassifier(j.at("classifier").get<std::string>());
    if (kind == ClassifierKind::kSvm) {
      b.model = SvmFromJson(j.at("svm"));
    } else {
      b.model = BpnFromJson(j.at("bpn"));
      const auto& t = j.at("bpn").at("training");
      b.bpn_config.seed = t.at("seed").get<std::uint64_t>();
      b.bpn_config.learning_rate = t.at("learning_rate").get<double>();
      b.bpn_config.hidden_learning_rate = t.at("hidden_learning_rate").get<double>();
      b.bpn_config.momentum = t.at("momentum").get<double>();
      b.bpn_config.target_error = t.at("target_error").get<double>();
      b.bpn_config.max_epochs = t.at("max_epochs").get<int>();
      b.bpn_config.init_range = t.at("init_range").get<double>();
    }
    if (b.pathway().normalization.dim() != b.feature_names.size()) {
      throw DataError("model normalization does not match its feature names");
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

void WriteModelFile(const std::filesystem::path& path, const ModelBundle& bundle) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model " + path.string());
  out << ToJson(bundle).dump(2) << "\n";
}

ModelBundle ReadModelFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cannot parse model " + path.string() + ": " + e.what());
  }
  return BundleFromJson(j);
}

TrainOutcome TrainModel(const LabeledDataset& raw_train, const ExperimentSpec& spec,
                        const std::string& stream, SelectionCache* cache) {
  spec.Validate();
  raw_train.Validate();
  if (raw_train.CountLabel(kAbnormal) == 0 || raw_train.CountLabel(kNormal) == 0) {
    throw DataError("training data needs both classes");
  }
  const NormalizationParams norm = FitNormalizer(raw_train);
  const LabeledDataset normalized = ApplyNormalizer(norm, raw_train);

  TrainOutcome out;
  const std::string cache_key = DomainName(spec.domain) + "/" + stream;
  std::optional<SelectionOutcome> cached;
  if (cache != nullptr && spec.selection.mode == SelectionMode::kGa) {
    cached = cache->Find(cache_key);
  }
  if (cached) {
    out.selection = std::move(*cached);
  } else {
    out.selection = SelectFeatures(normalized, spec, stream);
    if (cache != nullptr && spec.selection.mode == SelectionMode::kGa) {
      cache->Store(cache_key, out.selection);
    }
  }
  const LabeledDataset projected = normalized.Project(out.selection.subset);
  const FeaturePathway pathway{norm, out.selection.subset};

  ModelBundle& b = out.bundle;
  b.domain = spec.domain;
  b.glcm = spec.glcm;
  b.wct = spec.wct;
  b.block = spec.block;
  b.feature_names = FeatureNames(spec.domain, spec.wct);
  if (b.feature_names.size() != raw_train.dim()) {
    // Vectors not produced by the extractors (e.g. a feature CSV); name by
    // position.
    b.feature_names.clear();
    for (std::size_t k = 0; k < raw_train.dim(); ++k) {
      b.feature_names.push_back("f" + std::to_string(k));
    }
  }
  if (spec.classifier == ClassifierKind::kSvm) {
    SvmConfig cfg = spec.svm;
    cfg.seed = DeriveSeed(spec.seed, "svm/" + stream);
    SvmModel m = TrainSvm(projected, spec.kernel, cfg);
    m.pathway = pathway;
    b.model = std::move(m);
  } else {
    BpnConfig cfg = spec.bpn;
    cfg.seed = DeriveSeed(spec.seed, "bpn/" + stream);
    BpnModel m = TrainBpn(projected, cfg).model;
    m.pathway = pathway;
    b.model = std::move(m);
    b.bpn_config = cfg;
  }
  return out;
}

namespace {

std::vector<std::size_t> ModalSubset(const std::vector<std::vector<std::size_t>>& subsets) {
  std::vector<std::size_t> best;
  std::size_t best_count = 0;
  for (const auto& s : subsets) {
    const auto count = static_cast<std::size_t>(std::count(subsets.begin(), subsets.end(), s));
    if (count > best_count) {
      best_count = count;
      best = s;
    }
  }
  return best;
}

}  // namespace

ExperimentReport RunExperimentOnDataset(const LabeledDataset& raw,
                                        const ExperimentSpec& spec,
                                        SelectionCache* cache) {
  spec.Validate();
  raw.Validate();
  ExperimentReport report;
  report.spec = spec;
  report.name = spec.Name();
  report.ids = raw.ids;
  report.labels = raw.labels;
  report.feature_names = FeatureNames(spec.domain, spec.wct);
  if (report.feature_names.size() != raw.dim()) {
    report.feature_names.clear();
    for (std::size_t k = 0; k < raw.dim(); ++k) {
      report.feature_names.push_back("f" + std::to_string(k));
    }
  }
  report.plan = spec.cv.scheme == CvScheme::kLoocv
                    ? LoocvPlan(raw.size())
                    : KFoldPlan(raw.labels, spec.cv.k, DeriveSeed(spec.seed, "folds"),
                                spec.cv.stratified);
  report.fold_subsets.resize(report.plan.num_folds());
  const Trainer trainer = [&](const LabeledDataset& train, int fold) {
    auto outcome = std::make_shared<TrainOutcome>(
        TrainModel(train, spec, "fold" + std::to_string(fold), cache));
    report.fold_subsets[fold] = outcome->selection.subset;
    return Scorer{[outcome](const FeatureVector& x) { return outcome->bundle.Score(x); },
                  outcome->bundle.Threshold()};
  };
  report.cv = CrossValidate(raw, report.plan, trainer, spec.workers);
  report.roc = Roc(report.cv.scores, raw.labels);
  report.modal_subset = ModalSubset(report.fold_subsets);
  return report;
}

ExperimentReport RunExperiment(const Manifest& manifest, const ExperimentSpec& spec) {
  spec.Validate();
  return RunExperimentOnDataset(ExtractDataset(manifest, spec), spec);
}

std::vector<ExperimentReport> RunComparison(const Manifest& manifest,
                                            const ExperimentSpec& base) {
  std::vector<ExperimentReport> by_domain[2];
  int d = 0;
  for (const Domain domain : {Domain::kWavelet, Domain::kGrayLevel}) {
    ExperimentSpec spec = base;
    spec.domain = domain;
    const LabeledDataset data = ExtractDataset(manifest, spec);
    SelectionCache cache;
    for (const ClassifierKind c : {ClassifierKind::kSvm, ClassifierKind::kBpn}) {
      spec.classifier = c;
      by_domain[d].push_back(RunExperimentOnDataset(data, spec, &cache));
    }
    ++d;
  }
  // Reporting order: WT+SVM, SGLDM+SVM, WT+BPN, SGLDM+BPN.
  return {by_domain[0][0], by_domain[1][0], by_domain[0][1], by_domain[1][1]};
}

RegionMask SegmentImage(const GrayImage& img, const ModelBundle& model,
                        const BlockSpec& block) {
  if (model.domain == Domain::kWavelet && block.block_size % 4 != 0) {
    throw ConfigError("block size " + std::to_string(block.block_size) +
                      " cannot be decomposed to two wavelet levels");
  }
  RegionMask mask;
  mask.image_width = img.width();
  mask.image_height = img.height();
  mask.block = block;
  mask.grid = ComputeBlockGrid(img, block);
  const std::size_t n = static_cast<std::size_t>(mask.grid.count());
  mask.labels.resize(n);
  mask.scores.resize(n);
  for (int r = 0; r < mask.grid.rows; ++r) {
    for (int c = 0; c < mask.grid.cols; ++c) {
      const GrayImage b = Crop(img, r * block.stride, c * block.stride,
                               block.block_size, block.block_size);
      const FeatureVector raw =
          ExtractBlockFeatures(b, model.domain, model.glcm, model.wct);
      const std::size_t i = static_cast<std::size_t>(r) * mask.grid.cols + c;
      mask.scores[i] = model.Score(raw);
      mask.labels[i] = mask.scores[i] >= model.Threshold() ? kAbnormal : kNormal;
    }
  }
  return mask;
}

GrayImage RenderOverlay(const GrayImage& img, const RegionMask& mask) {
  GrayImage out = img;
  const int bs = mask.block.block_size;
  for (int r = 0; r < mask.grid.rows; ++r) {
    for (int c = 0; c < mask.grid.cols; ++c) {
      if (mask.at(r, c) != kAbnormal) continue;
      const int r0 = r * mask.block.stride;
      const int c0 = c * mask.block.stride;
      for (int k = 0; k < bs; ++k) {
        out.set(r0, c0 + k, 255);
        out.set(r0 + bs - 1, c0 + k, 255);
        out.set(r0 + k, c0, 255);
        out.set(r0 + k, c0 + bs - 1, 255);
      }
    }
  }
  return out;
}

GrayImage RenderMask(const RegionMask& mask) {
  GrayImage out(mask.image_width, mask.image_height, std::uint8_t{0});
  const int bs = mask.block.block_size;
  for (int r = 0; r < mask.grid.rows; ++r) {
    for (int c = 0; c < mask.grid.cols; ++c) {
      if (mask.at(r, c) != kAbnormal) continue;
      for (int y = 0; y < bs; ++y) {
        for (int x = 0; x < bs; ++x) {
          out.set(r * mask.block.stride + y, c * mask.block.stride + x, 255);
        }
      }
    }
  }
  return out;
}

}  // namespace wct
