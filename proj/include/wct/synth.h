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

#ifndef WCT_SYNTH_H_
#define WCT_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wct/imaging.h"
#include "wct/manifest.h"

namespace wct {

// Ground-truth rectangle of an inserted texture patch, in pixels.
struct PatchRect {
  int row = 0;
  int col = 0;
  int height = 0;
  int width = 0;

  bool Contains(int r, int c) const {
    return r >= row && r < row + height && c >= col && c < col + width;
  }
  bool Overlaps(int r0, int c0, int h, int w) const {
    return r0 < row + height && row < r0 + h && c0 < col + width && col < c0 + w;
  }
};

struct SynthConfig {
  int n_normal = 50;
  int n_abnormal = 50;
  int width = 96;
  int height = 96;
  // Patches are aligned to this grid and span 2 to 4 cells.
  int block_size = 32;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Everything needed to render one synthetic image.
struct SynthImageSpec {
  std::string id;
  int label = 0;
  std::uint64_t field_seed = 0;
  std::uint64_t patch_seed = 0;
  std::optional<PatchRect> patch;
};

// Per-image specs for a corpus: normals first, then abnormals.
std::vector<SynthImageSpec> PlanSynthCorpus(const SynthConfig& config);

// Smooth background: a constant level plus a few low-frequency sinusoids
// and mild Gaussian noise, rounded and clamped to 8 bits.
GrayImage RenderBackground(int width, int height, std::uint64_t field_seed);

// Background with a high-frequency, high-variance texture added inside
// `patch`; pixels outside the rectangle are untouched.
GrayImage InsertPatch(const GrayImage& background, const PatchRect& patch,
                      std::uint64_t patch_seed);

GrayImage RenderSynthImage(const SynthImageSpec& spec, const SynthConfig& config);

// Writes <id>.pgm files, manifest.csv and truth.csv (id,row,col,height,width
// for abnormal images) into out_dir and returns the manifest.
Manifest WriteSynthCorpus(const std::filesystem::path& out_dir,
                          const SynthConfig& config);

struct TruthEntry {
  std::string id;
  PatchRect patch;
};
std::vector<TruthEntry> ReadTruthCsv(const std::filesystem::path& path);

}  // namespace wct

#endif  // WCT_SYNTH_H_
