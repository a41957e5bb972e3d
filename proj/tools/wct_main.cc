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

// Command-line front end. Exit codes: 0 success, 1 usage or configuration
// error, 2 data error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wct/config.h"
#include "wct/errors.h"
#include "wct/imaging.h"
#include "wct/manifest.h"
#include "wct/pipeline.h"
#include "wct/report.h"
#include "wct/synth.h"
#include "wct/text.h"

namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> sets;
};

wct::PipelineConfig LoadConfig(const Globals& g) {
  wct::PipelineConfig config = wct::DefaultConfig();
  if (!g.config_path.empty()) wct::ApplyConfigFile(config, g.config_path);
  for (const std::string& kv : g.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw wct::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    wct::SetConfigValue(config, std::string(wct::Trim(kv.substr(0, eq))),
                        std::string(wct::Trim(kv.substr(eq + 1))));
  }
  // WCT_SEED is deliberately not consulted: flags > config file > defaults.
  if (g.seed) wct::SetSeed(config, *g.seed);
  config.experiment.Validate();
  return config;
}

fs::path OutDir(const Globals& g, const std::string& fallback) {
  return g.out.empty() ? fs::path(fallback) : fs::path(g.out);
}

std::ofstream OpenFile(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wct::DataError("cannot write " + path.string());
  return out;
}

void RequireFile(const std::string& path, const char* what) {
  if (path.empty()) throw wct::ConfigError(std::string("missing --") + what);
  if (!fs::exists(path)) throw wct::DataError(std::string(what) + " not found: " + path);
}

int RunSynth(const Globals& g) {
  const auto config = LoadConfig(g);
  const fs::path dir = OutDir(g, "data");
  const wct::Manifest m = wct::WriteSynthCorpus(dir, config.synth);
  std::printf("wrote %zu images and %s\n", m.entries.size(),
              (dir / "manifest.csv").string().c_str());
  return 0;
}

int RunExtract(const Globals& g, const std::string& manifest_path,
               const std::string& image_path) {
  const auto config = LoadConfig(g);
  const auto& spec = config.experiment;
  std::ostringstream csv;
  if (!image_path.empty()) {
    RequireFile(image_path, "image");
    const wct::GrayImage img = wct::ReadPgmFile(image_path);
    const auto v = wct::ExtractImageFeatures(img, spec.domain, spec.glcm, spec.wct,
                                             spec.block.block_size);
    const auto names = wct::FeatureNames(spec.domain, spec.wct);
    for (std::size_t k = 0; k < names.size(); ++k) csv << (k ? "," : "") << names[k];
    csv << "\n";
    for (std::size_t k = 0; k < v.size(); ++k) csv << (k ? "," : "") << wct::FormatReal(v[k]);
    csv << "\n";
  } else {
    RequireFile(manifest_path, "manifest");
    const auto data = wct::ExtractDataset(wct::ReadManifest(manifest_path), spec);
    std::vector<std::string> labels;
    for (const int l : data.labels) labels.push_back(wct::LabelName(l));
    wct::WriteFeatureCsv(csv, data.ids, labels, data.vectors);
  }
  if (g.out.empty()) {
    std::cout << csv.str();
  } else {
    OpenFile(g.out) << csv.str();
  }
  return 0;
}

int RunSelect(const Globals& g, const std::string& manifest_path) {
  RequireFile(manifest_path, "manifest");
  auto config = LoadConfig(g);
  config.experiment.selection.mode = wct::SelectionMode::kGa;
  const auto& spec = config.experiment;
  const auto raw = wct::ExtractDataset(wct::ReadManifest(manifest_path), spec);
  const auto normalized = wct::ApplyNormalizer(wct::FitNormalizer(raw), raw);
  const auto outcome = wct::SelectFeatures(normalized, spec, "full");
  const auto names = wct::FeatureNames(spec.domain, spec.wct);
  const fs::path dir = OutDir(g, "selection");
  fs::create_directories(dir);
  {
    auto out = OpenFile(dir / "ga_history.csv");
    wct::WriteGaHistoryCsv(out, *outcome.ga);
  }
  {
    auto out = OpenFile(dir / "selection.txt");
    out << "chromosome " << outcome.ga->best.chromosome.ToString() << "\n"
        << "j " << wct::FormatReal(outcome.ga->best.j) << "\n"
        << "fitness " << wct::FormatReal(outcome.ga->best.fitness) << "\n"
        << "features " << wct::SubsetNames(outcome.subset, names) << "\n";
  }
  std::printf("best %s  J=%.4f  fitness=%.4f  features=%s\n",
              outcome.ga->best.chromosome.ToString().c_str(), outcome.ga->best.j,
              outcome.ga->best.fitness, wct::SubsetNames(outcome.subset, names).c_str());
  return 0;
}

int RunTrain(const Globals& g, const std::string& manifest_path, std::string model_path) {
  RequireFile(manifest_path, "manifest");
  const auto config = LoadConfig(g);
  const auto raw = wct::ExtractDataset(wct::ReadManifest(manifest_path), config.experiment);
  const auto outcome = wct::TrainModel(raw, config.experiment, "full");
  if (model_path.empty()) model_path = (OutDir(g, ".") / "model.json").string();
  const fs::path p(model_path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  wct::WriteModelFile(p, outcome.bundle);
  std::printf("trained %s on %zu images, features %s -> %s\n",
              config.experiment.Name().c_str(), raw.size(),
              wct::SubsetNames(outcome.selection.subset, outcome.bundle.feature_names).c_str(),
              model_path.c_str());
  return 0;
}

int RunEvaluate(const Globals& g, const std::string& manifest_path) {
  RequireFile(manifest_path, "manifest");
  const auto config = LoadConfig(g);
  const auto report = wct::RunExperiment(wct::ReadManifest(manifest_path), config.experiment);
  const fs::path dir = OutDir(g, "report");
  wct::WriteArmReport(dir, report, config);
  std::ifstream in(dir / "metrics.txt");
  std::cout << in.rdbuf();
  return 0;
}

int RunSegment(const Globals& g, const std::string& model_path, const std::string& image_path) {
  RequireFile(model_path, "model");
  RequireFile(image_path, "image");
  const auto config = LoadConfig(g);
  const auto bundle = wct::ReadModelFile(model_path);
  const auto img = wct::ReadPgmFile(image_path);
  const auto mask = wct::SegmentImage(img, bundle, config.experiment.block);
  const fs::path dir = OutDir(g, "segment");
  fs::create_directories(dir);
  {
    auto out = OpenFile(dir / "mask.csv");
    out << "row,col,label,score\n";
    for (int r = 0; r < mask.grid.rows; ++r) {
      for (int c = 0; c < mask.grid.cols; ++c) {
        const std::size_t i = static_cast<std::size_t>(r) * mask.grid.cols + c;
        out << r << "," << c << "," << wct::LabelName(mask.labels[i]) << ","
            << wct::FormatReal(mask.scores[i]) << "\n";
      }
    }
  }
  wct::WritePgmFile(dir / "overlay.pgm", wct::RenderOverlay(img, mask));
  wct::WritePgmFile(dir / "mask.pgm", wct::RenderMask(mask));
  int abnormal = 0;
  for (const int l : mask.labels) abnormal += l == wct::kAbnormal;
  std::printf("%d of %d blocks abnormal\n", abnormal, mask.grid.count());
  return 0;
}

int RunRoc(const Globals& g, const std::string& scores_path) {
  RequireFile(scores_path, "scores");
  std::ifstream in(scores_path);
  std::string line;
  if (!std::getline(in, line)) throw wct::DataError("empty scores file " + scores_path);
  const auto header = wct::SplitString(line, ',');
  int label_col = -1;
  int score_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (wct::Trim(header[c]) == "label") label_col = static_cast<int>(c);
    if (wct::Trim(header[c]) == "score") score_col = static_cast<int>(c);
  }
  if (label_col < 0 || score_col < 0) {
    throw wct::DataError(scores_path + ": header needs 'label' and 'score' columns");
  }
  std::vector<double> scores;
  std::vector<int> labels;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (wct::Trim(line).empty()) continue;
    const auto f = wct::SplitString(line, ',');
    if (f.size() != header.size()) {
      throw wct::DataError(scores_path + ":" + std::to_string(line_no) + ": wrong field count");
    }
    labels.push_back(wct::ParseLabel(std::string(wct::Trim(f[label_col]))));
    try {
      scores.push_back(std::stod(f[score_col]));
    } catch (const std::exception&) {
      throw wct::DataError(scores_path + ":" + std::to_string(line_no) + ": bad score");
    }
  }
  const auto roc = wct::Roc(scores, labels);
  const fs::path dir = OutDir(g, "roc");
  fs::create_directories(dir);
  {
    auto out = OpenFile(dir / "roc.csv");
    wct::WriteRocCsv(out, roc);
  }
  {
    auto out = OpenFile(dir / "roc.svg");
    wct::WriteRocSvg(out, {{fs::path(scores_path).stem().string(), roc}});
  }
  std::printf("AUC %.6f over %zu cases\n", roc.auc, scores.size());
  return 0;
}

int RunCompare(const Globals& g, const std::string& manifest_path) {
  RequireFile(manifest_path, "manifest");
  const auto config = LoadConfig(g);
  const auto reports = wct::RunComparison(wct::ReadManifest(manifest_path), config.experiment);
  const fs::path dir = OutDir(g, "compare");
  wct::WriteComparisonReport(dir, reports, config);
  std::cout << wct::ComparisonText(reports);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet co-occurrence texture classification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "key = value configuration file");
  app.add_option("--seed", g.seed, "root random seed (overrides the config file)");
  app.add_option("--out", g.out, "output directory (or file for extract)");
  app.add_option("--set", g.sets, "override one config key, key=value (repeatable)");

  std::string manifest, image, model, scores;
  auto* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
  auto* extract = app.add_subcommand("extract", "write per-image feature vectors as CSV");
  extract->add_option("--manifest", manifest, "manifest CSV (path,label,id)");
  extract->add_option("--image", image, "single PGM image");
  auto* select = app.add_subcommand("select", "run GA feature selection on a manifest");
  select->add_option("--manifest", manifest, "manifest CSV")->required();
  auto* train = app.add_subcommand("train", "train a classifier on a whole manifest");
  train->add_option("--manifest", manifest, "manifest CSV")->required();
  train->add_option("--model", model, "model JSON to write (default <out>/model.json)");
  auto* evaluate = app.add_subcommand("evaluate", "cross-validate one configured arm");
  evaluate->add_option("--manifest", manifest, "manifest CSV")->required();
  auto* segment = app.add_subcommand("segment", "label the blocks of one image");
  segment->add_option("--model", model, "model JSON")->required();
  segment->add_option("--image", image, "PGM image")->required();
  auto* roc = app.add_subcommand("roc", "ROC curve from a scores CSV (label,score columns)");
  roc->add_option("--scores", scores, "scores CSV")->required();
  auto* compare = app.add_subcommand("compare", "run the four wavelet/gray-level x SVM/BPN arms");
  compare->add_option("--manifest", manifest, "manifest CSV")->required();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*synth) return RunSynth(g);
    if (*extract) {
      if (manifest.empty() == image.empty()) {
        throw wct::ConfigError("extract needs exactly one of --manifest or --image");
      }
      return RunExtract(g, manifest, image);
    }
    if (*select) return RunSelect(g, manifest);
    if (*train) return RunTrain(g, manifest, model);
    if (*evaluate) return RunEvaluate(g, manifest);
    if (*segment) return RunSegment(g, model, image);
    if (*roc) return RunRoc(g, scores);
    if (*compare) return RunCompare(g, manifest);
  } catch (const wct::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
