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

#include "wct/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "wct/errors.h"
#include "wct/text.h"

namespace wct {
namespace {

struct Key {
  const char* name;
  std::function<std::string(const PipelineConfig&)> get;
  std::function<void(PipelineConfig&, const std::string&)> set;
};

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const char* expected) {
  throw ConfigError("bad value '" + value + "' for " + key + " (expected " +
                    expected + ")");
}

long long ToInt(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) BadValue(key, v, "integer");
  return out;
}

std::uint64_t ToU64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    BadValue(key, v, "non-negative integer");
  }
  return out;
}

double ToReal(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used != v.size()) BadValue(key, v, "number");
    return out;
  } catch (const std::logic_error&) {
    BadValue(key, v, "number");
  }
}

bool ToBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  BadValue(key, v, "true|false");
}

std::string Bool(bool b) { return b ? "true" : "false"; }

std::string Real(double x) { return FormatReal(x); }

std::string JoinIndices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

std::string JoinAngles(const std::vector<GlcmAngle>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(static_cast<int>(v[i]));
  }
  return out;
}

#define INT_KEY(name, field)                                                  \
  Key {                                                                       \
    name, [](const PipelineConfig& c) { return std::to_string(c.field); },    \
        [](PipelineConfig& c, const std::string& v) {                         \
          c.field = static_cast<decltype(c.field)>(ToInt(name, v));           \
        }                                                                     \
  }
#define REAL_KEY(name, field)                                                 \
  Key {                                                                       \
    name, [](const PipelineConfig& c) { return Real(c.field); },              \
        [](PipelineConfig& c, const std::string& v) { c.field = ToReal(name, v); } \
  }
#define BOOL_KEY(name, field)                                                 \
  Key {                                                                       \
    name, [](const PipelineConfig& c) { return Bool(c.field); },              \
        [](PipelineConfig& c, const std::string& v) { c.field = ToBool(name, v); } \
  }

const std::vector<Key>& Keys() {
  static const std::vector<Key> keys = {
      Key{"seed", [](const PipelineConfig& c) { return std::to_string(c.experiment.seed); },
          [](PipelineConfig& c, const std::string& v) { SetSeed(c, ToU64("seed", v)); }},
      INT_KEY("workers", experiment.workers),
      Key{"domain", [](const PipelineConfig& c) { return DomainName(c.experiment.domain); },
          [](PipelineConfig& c, const std::string& v) { c.experiment.domain = ParseDomain(v); }},
      Key{"classifier",
          [](const PipelineConfig& c) { return ClassifierName(c.experiment.classifier); },
          [](PipelineConfig& c, const std::string& v) {
            c.experiment.classifier = ParseClassifier(v);
          }},
      INT_KEY("block_size", experiment.block.block_size),
      INT_KEY("stride", experiment.block.stride),
      INT_KEY("glcm.levels", experiment.glcm.levels),
      INT_KEY("glcm.distance", experiment.glcm.distance),
      Key{"glcm.angles",
          [](const PipelineConfig& c) { return JoinAngles(c.experiment.glcm.angles); },
          [](PipelineConfig& c, const std::string& v) {
            std::vector<GlcmAngle> angles;
            for (const auto& part : SplitString(v, ',')) {
              const long long a = ToInt("glcm.angles", std::string(Trim(part)));
              if (a != 0 && a != 45 && a != 90 && a != 135) {
                BadValue("glcm.angles", v, "comma list of 0,45,90,135");
              }
              angles.push_back(static_cast<GlcmAngle>(a));
            }
            c.experiment.glcm.angles = angles;
          }},
      BOOL_KEY("include_first_level", experiment.wct.include_first_level),
      Key{"selection",
          [](const PipelineConfig& c) {
            return SelectionModeName(c.experiment.selection.mode);
          },
          [](PipelineConfig& c, const std::string& v) {
            c.experiment.selection.mode = ParseSelectionMode(v);
          }},
      Key{"selection.fixed",
          [](const PipelineConfig& c) { return JoinIndices(c.experiment.selection.fixed); },
          [](PipelineConfig& c, const std::string& v) {
            std::vector<std::size_t> idx;
            if (!Trim(v).empty()) {
              for (const auto& part : SplitString(v, ',')) {
                idx.push_back(ToU64("selection.fixed", std::string(Trim(part))));
              }
            }
            c.experiment.selection.fixed = idx;
          }},
      INT_KEY("selection.inner_folds", experiment.selection.inner_folds),
      INT_KEY("ga.population", experiment.selection.ga.population_size),
      REAL_KEY("ga.crossover_prob", experiment.selection.ga.crossover_prob),
      REAL_KEY("ga.mutation_rate", experiment.selection.ga.mutation_rate),
      REAL_KEY("ga.penalty_w", experiment.selection.ga.penalty_w),
      INT_KEY("ga.target_size", experiment.selection.ga.target_size),
      INT_KEY("ga.generations", experiment.selection.ga.generations),
      Key{"ga.penalty_mode",
          [](const PipelineConfig& c) {
            return c.experiment.selection.ga.penalty_mode == PenaltyMode::kSigned
                       ? std::string("signed")
                       : std::string("absolute");
          },
          [](PipelineConfig& c, const std::string& v) {
            if (v == "signed") {
              c.experiment.selection.ga.penalty_mode = PenaltyMode::kSigned;
            } else if (v == "absolute") {
              c.experiment.selection.ga.penalty_mode = PenaltyMode::kAbsolute;
            } else {
              BadValue("ga.penalty_mode", v, "signed|absolute");
            }
          }},
      Key{"svm.kernel",
          [](const PipelineConfig& c) {
            switch (c.experiment.kernel.kind) {
              case KernelSpec::Kind::kLinear:
                return std::string("linear");
              case KernelSpec::Kind::kPolynomial:
                return std::string("polynomial");
              case KernelSpec::Kind::kGaussian:
                break;
            }
            return std::string("gaussian");
          },
          [](PipelineConfig& c, const std::string& v) {
            c.experiment.kernel.kind = ParseKernelKind(v);
          }},
      INT_KEY("svm.degree", experiment.kernel.degree),
      REAL_KEY("svm.coef0", experiment.kernel.coef0),
      REAL_KEY("svm.gamma", experiment.kernel.gamma),
      REAL_KEY("svm.c", experiment.svm.c),
      REAL_KEY("svm.tol", experiment.svm.tol),
      INT_KEY("svm.max_passes", experiment.svm.max_passes),
      REAL_KEY("bpn.learning_rate", experiment.bpn.learning_rate),
      REAL_KEY("bpn.hidden_learning_rate", experiment.bpn.hidden_learning_rate),
      REAL_KEY("bpn.momentum", experiment.bpn.momentum),
      REAL_KEY("bpn.target_error", experiment.bpn.target_error),
      INT_KEY("bpn.max_epochs", experiment.bpn.max_epochs),
      REAL_KEY("bpn.init_range", experiment.bpn.init_range),
      INT_KEY("bpn.hidden_dim", experiment.bpn.hidden_dim),
      Key{"cv.scheme",
          [](const PipelineConfig& c) {
            return c.experiment.cv.scheme == CvScheme::kKFold ? std::string("kfold")
                                                              : std::string("loocv");
          },
          [](PipelineConfig& c, const std::string& v) {
            if (v == "kfold") {
              c.experiment.cv.scheme = CvScheme::kKFold;
            } else if (v == "loocv") {
              c.experiment.cv.scheme = CvScheme::kLoocv;
            } else {
              BadValue("cv.scheme", v, "kfold|loocv");
            }
          }},
      INT_KEY("cv.k", experiment.cv.k),
      BOOL_KEY("cv.stratified", experiment.cv.stratified),
      INT_KEY("synth.n_normal", synth.n_normal),
      INT_KEY("synth.n_abnormal", synth.n_abnormal),
      INT_KEY("synth.width", synth.width),
      INT_KEY("synth.height", synth.height),
      INT_KEY("synth.block_size", synth.block_size),
  };
  return keys;
}

#undef INT_KEY
#undef REAL_KEY
#undef BOOL_KEY

}  // namespace

PipelineConfig DefaultConfig() { return PipelineConfig{}; }

std::vector<std::pair<std::string, std::string>> ParseConfigText(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = std::string(Trim(line));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key(Trim(line.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    out.emplace_back(std::move(key), std::string(Trim(line.substr(eq + 1))));
  }
  return out;
}

void SetConfigValue(PipelineConfig& config, const std::string& key,
                    const std::string& value) {
  for (const Key& k : Keys()) {
    if (key == k.name) {
      k.set(config, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void ApplyConfigText(PipelineConfig& config, const std::string& text) {
  for (const auto& [key, value] : ParseConfigText(text)) {
    SetConfigValue(config, key, value);
  }
}

void ApplyConfigFile(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    ApplyConfigText(config, ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void SetSeed(PipelineConfig& config, std::uint64_t seed) {
  config.experiment.seed = seed;
  config.synth.seed = seed;
}

std::vector<std::pair<std::string, std::string>> ConfigEntries(const PipelineConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Key& k : Keys()) out.emplace_back(k.name, k.get(config));
  return out;
}

std::string EchoConfig(const PipelineConfig& config) {
  std::string out;
  for (const auto& [key, value] : ConfigEntries(config)) {
    out += key + " = " + value + "\n";
  }
  return out;
}

}  // namespace wct
