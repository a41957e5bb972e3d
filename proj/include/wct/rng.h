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

#ifndef WCT_RNG_H_
#define WCT_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace wct {

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the conversions to doubles and bounded integers
// are done here so that results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent sub-stream derived from a root seed and a stream name, e.g.
  // Rng::Stream(seed, "ga/fold3").
  static Rng Stream(std::uint64_t root_seed, std::string_view name);

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform();
  // Uniform in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n); n must be > 0.
  std::uint64_t UniformIndex(std::uint64_t n);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Standard normal via Box-Muller (no cached second value).
  double Normal();

 private:
  std::mt19937_64 engine_;
};

// Mixes a root seed and a stream name into a new 64-bit seed.
std::uint64_t DeriveSeed(std::uint64_t root_seed, std::string_view name);

}  // namespace wct

#endif  // WCT_RNG_H_
