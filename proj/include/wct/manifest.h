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

#ifndef WCT_MANIFEST_H_
#define WCT_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

namespace wct {

struct ManifestEntry {
  std::filesystem::path path;
  int label = 0;  // +1 abnormal, -1 normal
  std::string id;
};

// Image list of a dataset. CSV form: header "path,label,id", labels
// "normal" / "abnormal", relative paths resolved against the manifest's
// directory.
struct Manifest {
  std::vector<ManifestEntry> entries;

  // Throws DataError on duplicate paths or ids, or bad labels.
  void Validate() const;
};

Manifest ReadManifest(const std::filesystem::path& csv_path);
// Paths are written relative to the manifest's directory when possible.
void WriteManifest(const std::filesystem::path& csv_path, const Manifest& m);

std::string LabelName(int label);
int ParseLabel(const std::string& name);

}  // namespace wct

#endif  // WCT_MANIFEST_H_
