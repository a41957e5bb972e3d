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

#include "wct/manifest.h"

#include <fstream>
#include <set>

#include "wct/errors.h"
#include "wct/text.h"

namespace wct {

std::string LabelName(int label) {
  return label == 1 ? "abnormal" : "normal";
}

int ParseLabel(const std::string& name) {
  if (name == "abnormal" || name == "1" || name == "+1") return 1;
  if (name == "normal" || name == "-1") return -1;
  throw DataError("unknown label '" + name + "'");
}

void Manifest::Validate() const {
  std::set<std::string> paths;
  std::set<std::string> ids;
  for (const auto& e : entries) {
    if (e.label != 1 && e.label != -1) throw DataError("bad label for " + e.id);
    if (!paths.insert(e.path.lexically_normal().string()).second) {
      throw DataError("duplicate manifest path " + e.path.string());
    }
    if (!ids.insert(e.id).second) throw DataError("duplicate manifest id " + e.id);
  }
}

Manifest ReadManifest(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw DataError("cannot open manifest " + csv_path.string());
  std::string line;
  if (!std::getline(in, line) || Trim(line) != "path,label,id") {
    throw DataError("manifest " + csv_path.string() +
                    " must start with header 'path,label,id'");
  }
  const auto base = csv_path.parent_path();
  Manifest m;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto f = SplitString(Trim(line), ',');
    if (f.size() != 3) {
      throw DataError(csv_path.string() + ":" + std::to_string(line_no) +
                      ": expected 3 fields");
    }
    std::filesystem::path p(std::string(Trim(f[0])));
    if (p.is_relative()) p = base / p;
    const int label = ParseLabel(std::string(Trim(f[1])));
    m.entries.push_back({p, label, std::string(Trim(f[2]))});
  }
  m.Validate();
  return m;
}

void WriteManifest(const std::filesystem::path& csv_path, const Manifest& m) {
  m.Validate();
  std::ofstream out(csv_path);
  if (!out) throw DataError("cannot write manifest " + csv_path.string());
  const auto base = csv_path.parent_path();
  out << "path,label,id\n";
  for (const auto& e : m.entries) {
    std::filesystem::path p = e.path;
    if (!base.empty() && p.parent_path() == base) p = p.filename();
    out << p.generic_string() << "," << LabelName(e.label) << "," << e.id << "\n";
  }
}

}  // namespace wct
