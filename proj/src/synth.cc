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

#include "wct/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "wct/errors.h"
#include "wct/rng.h"
#include "wct/text.h"

namespace wct {
namespace {

struct Wave {
  double fx;
  double fy;
  double phase;
  double amplitude;
};

Wave RandomWave(Rng& rng, double min_period, double max_period,
                double min_amp, double max_amp) {
  const double period = rng.Uniform(min_period, max_period);
  const double theta = rng.Uniform(0.0, std::numbers::pi);
  return {std::cos(theta) / period, std::sin(theta) / period,
          rng.Uniform(0.0, 2.0 * std::numbers::pi), rng.Uniform(min_amp, max_amp)};
}

double EvalWave(const Wave& w, int r, int c) {
  return w.amplitude *
         std::sin(2.0 * std::numbers::pi * (w.fx * c + w.fy * r) + w.phase);
}

std::uint8_t ToPixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Field levels.
constexpr double kBaseLevel = 110.0;
constexpr int kFieldWaves = 3;
constexpr double kFieldMinPeriod = 64.0;
constexpr double kFieldMaxPeriod = 256.0;
constexpr double kFieldMinAmplitude = 10.0;
constexpr double kFieldMaxAmplitude = 25.0;
constexpr double kFieldNoiseSigma = 2.0;
// Patch texture.
constexpr int kPatchWaves = 2;
constexpr double kPatchMinPeriod = 5.5;
constexpr double kPatchMaxPeriod = 7.5;
constexpr double kPatchMinAmplitude = 40.0;
constexpr double kPatchMaxAmplitude = 55.0;
constexpr double kPatchNoiseSigma = 4.0;

}  // namespace

void SynthConfig::Validate() const {
  if (n_normal < 1 || n_abnormal < 1) {
    throw ConfigError("synthetic corpus needs >= 1 image per class");
  }
  if (block_size < 4) throw ConfigError("synthetic block size must be >= 4");
  if (width < 2 * block_size || height < 2 * block_size) {
    throw ConfigError("synthetic images must hold at least 2x2 blocks");
  }
}

std::vector<SynthImageSpec> PlanSynthCorpus(const SynthConfig& config) {
  config.Validate();
  Rng rng = Rng::Stream(config.seed, "synth");
  const int grid_rows = config.height / config.block_size;
  const int grid_cols = config.width / config.block_size;
  std::vector<SynthImageSpec> specs;
  auto make_id = [](const char* prefix, int i) {
    std::string n = std::to_string(i);
    return std::string(prefix) + std::string(3 - std::min<std::size_t>(3, n.size()), '0') + n;
  };
  for (int i = 0; i < config.n_normal; ++i) {
    specs.push_back({make_id("normal_", i), -1, rng.Next(), rng.Next(), std::nullopt});
  }
  static constexpr int kShapes[][2] = {{1, 2}, {2, 1}, {2, 2}};
  for (int i = 0; i < config.n_abnormal; ++i) {
    SynthImageSpec s{make_id("abnormal_", i), 1, rng.Next(), rng.Next(), std::nullopt};
    const auto& shape = kShapes[rng.UniformIndex(3)];
    const int bh = shape[0];
    const int bw = shape[1];
    const int r = static_cast<int>(rng.UniformIndex(grid_rows - bh + 1));
    const int c = static_cast<int>(rng.UniformIndex(grid_cols - bw + 1));
    s.patch = PatchRect{r * config.block_size, c * config.block_size,
                        bh * config.block_size, bw * config.block_size};
    specs.push_back(std::move(s));
  }
  return specs;
}

GrayImage RenderBackground(int width, int height, std::uint64_t field_seed) {
  Rng rng(field_seed);
  std::vector<Wave> waves;
  for (int k = 0; k < kFieldWaves; ++k) {
    waves.push_back(RandomWave(rng, kFieldMinPeriod, kFieldMaxPeriod, kFieldMinAmplitude, kFieldMaxAmplitude));
  }
  GrayImage img(width, height, std::uint8_t{0});
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      double v = kBaseLevel;
      for (const auto& w : waves) v += EvalWave(w, r, c);
      v += kFieldNoiseSigma * rng.Normal();
      img.set(r, c, ToPixel(v));
    }
  }
  return img;
}

GrayImage InsertPatch(const GrayImage& background, const PatchRect& patch,
                      std::uint64_t patch_seed) {
  if (patch.row < 0 || patch.col < 0 || patch.height <= 0 || patch.width <= 0 ||
      patch.row + patch.height > background.height() ||
      patch.col + patch.width > background.width()) {
    throw DataError("patch rectangle outside image");
  }
  Rng rng(patch_seed);
  // One grating along the columns and one along the rows.
  std::vector<Wave> waves;
  for (int k = 0; k < kPatchWaves; ++k) {
    const double period = rng.Uniform(kPatchMinPeriod, kPatchMaxPeriod);
    const double theta = k * std::numbers::pi / 2.0;
    waves.push_back({std::cos(theta) / period, std::sin(theta) / period,
                     rng.Uniform(0.0, 2.0 * std::numbers::pi),
                     rng.Uniform(kPatchMinAmplitude, kPatchMaxAmplitude)});
  }
  GrayImage img = background;
  for (int r = patch.row; r < patch.row + patch.height; ++r) {
    for (int c = patch.col; c < patch.col + patch.width; ++c) {
      double v = background.at(r, c);
      for (const auto& w : waves) v += EvalWave(w, r, c);
      v += kPatchNoiseSigma * rng.Normal();
      img.set(r, c, ToPixel(v));
    }
  }
  return img;
}

GrayImage RenderSynthImage(const SynthImageSpec& spec, const SynthConfig& config) {
  GrayImage img = RenderBackground(config.width, config.height, spec.field_seed);
  if (spec.patch) img = InsertPatch(img, *spec.patch, spec.patch_seed);
  return img;
}

Manifest WriteSynthCorpus(const std::filesystem::path& out_dir,
                          const SynthConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create directory " + out_dir.string());
  Manifest manifest;
  const auto specs = PlanSynthCorpus(config);
  std::ofstream truth(out_dir / "truth.csv");
  if (!truth) throw DataError("cannot write " + (out_dir / "truth.csv").string());
  truth << "id,row,col,height,width\n";
  for (const auto& spec : specs) {
    const auto file = out_dir / (spec.id + ".pgm");
    WritePgmFile(file, RenderSynthImage(spec, config));
    manifest.entries.push_back({file, spec.label, spec.id});
    if (spec.patch) {
      truth << spec.id << "," << spec.patch->row << "," << spec.patch->col << ","
            << spec.patch->height << "," << spec.patch->width << "\n";
    }
  }
  WriteManifest(out_dir / "manifest.csv", manifest);
  return manifest;
}

std::vector<TruthEntry> ReadTruthCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<TruthEntry> out;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    const auto f = SplitString(Trim(line), ',');
    if (f.size() != 5) throw DataError("bad truth row: " + line);
    try {
      out.push_back({f[0], {std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3]),
                            std::stoi(f[4])}});
    } catch (const std::exception&) {
      throw DataError("bad truth row: " + line);
    }
  }
  return out;
}

}  // namespace wct
