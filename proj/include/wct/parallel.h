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

#ifndef WCT_PARALLEL_H_
#define WCT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace wct {

// Runs body(i) for i in [0, n) on up to `workers` threads (0 = hardware
// concurrency). Each index runs exactly once; callers write results into
// per-index slots so that output never depends on scheduling. The first
// exception thrown by any body is rethrown after all workers stop.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body,
                 std::size_t workers = 0);

}  // namespace wct

#endif  // WCT_PARALLEL_H_
