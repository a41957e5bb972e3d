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

#ifndef WCT_TEXT_H_
#define WCT_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace wct {

// Round-trippable decimal with 17 significant digits ("%.17g").
std::string FormatReal(double v);
// Fixed-point formatting with `digits` decimals.
std::string FormatFixed(double v, int digits);

std::vector<std::string> SplitString(std::string_view s, char sep);
std::string_view Trim(std::string_view s);

}  // namespace wct

#endif  // WCT_TEXT_H_
