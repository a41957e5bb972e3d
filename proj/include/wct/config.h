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

#ifndef WCT_CONFIG_H_
#define WCT_CONFIG_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wct/pipeline.h"
#include "wct/synth.h"

namespace wct {

// Every tunable of the tool. Config files, --set overrides and the
// config echo in reports all go through the same key table.
struct PipelineConfig {
  ExperimentSpec experiment;
  SynthConfig synth;
};

PipelineConfig DefaultConfig();

// Parses "key = value" lines. Blank lines and text after '#' are ignored.
// Throws ConfigError with the line number on malformed input.
std::vector<std::pair<std::string, std::string>> ParseConfigText(const std::string& text);

// Sets one key. Throws ConfigError on unknown keys or bad values.
void SetConfigValue(PipelineConfig& config, const std::string& key,
                    const std::string& value);

void ApplyConfigText(PipelineConfig& config, const std::string& text);
void ApplyConfigFile(PipelineConfig& config, const std::filesystem::path& path);

// Sets both experiment and synth seeds.
void SetSeed(PipelineConfig& config, std::uint64_t seed);

// All keys with their current values, in table order.
std::vector<std::pair<std::string, std::string>> ConfigEntries(const PipelineConfig& config);

// ConfigEntries as "key = value" lines; parsing the output with
// ApplyConfigText reproduces the config.
std::string EchoConfig(const PipelineConfig& config);

}  // namespace wct

#endif  // WCT_CONFIG_H_
