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

#ifndef WCT_SELECTION_H_
#define WCT_SELECTION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wct/rng.h"

namespace wct {

// Feature-subset bit string; bit k set selects feature k (0-based storage,
// rendered 1-based in reports).
class Chromosome {
 public:
  Chromosome() = default;
  explicit Chromosome(std::size_t length) : bits_(length, 0) {}
  explicit Chromosome(std::vector<std::uint8_t> bits);

  // Parses a string of '0'/'1' characters.
  static Chromosome FromString(std::string_view s);
  // Encodes a 0-based index set.
  static Chromosome FromIndices(std::size_t length,
                                const std::vector<std::size_t>& indices);

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t k) const { return bits_[k] != 0; }
  void set(std::size_t k, bool v) { bits_[k] = v ? 1 : 0; }
  void flip(std::size_t k) { bits_[k] ^= 1; }
  std::size_t count() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::string ToString() const;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// 0-based positions of set bits.
std::vector<std::size_t> Decode(const Chromosome& c);
// 1-based positions of set bits, as written in reports ("00101000" -> {3,5}).
std::vector<std::size_t> DecodeOneBased(const Chromosome& c);

std::size_t HammingDistance(const Chromosome& a, const Chromosome& b);

enum class PenaltyMode { kSigned, kAbsolute };

struct GaConfig {
  int population_size = 30;
  double crossover_prob = 1.0;
  double mutation_rate = 0.1;
  double penalty_w = 0.5;
  int target_size = 4;
  int generations = 100;
  PenaltyMode penalty_mode = PenaltyMode::kSigned;
  std::uint64_t seed = 0;
  // Worker threads for fitness evaluation within a generation (1 = serial).
  std::size_t workers = 1;

  void Validate() const;
};

// Classification performance J(X) in [0, 1] of a non-empty 0-based feature
// subset. Must be pure and safe to call concurrently.
using SubsetEvaluator = std::function<double(const std::vector<std::size_t>&)>;

inline constexpr double kEmptySubsetFitness =
    -std::numeric_limits<double>::infinity();

struct FitnessReport {
  Chromosome chromosome;
  double j = 0.0;
  double fitness = kEmptySubsetFitness;
  int generation = 0;
};

// w * (|X| - d), or w * ||X| - d| in absolute mode.
double Penalty(std::size_t subset_size, const GaConfig& config);

// fitness = J(X) - penalty(X). An empty subset gets kEmptySubsetFitness
// without calling the evaluator.
FitnessReport EvaluateFitness(const Chromosome& c,
                              const SubsetEvaluator& evaluator,
                              const GaConfig& config, int generation = 0);
FitnessReport MakeReport(const Chromosome& c, double j, const GaConfig& config,
                         int generation);

// Rank-based roulette wheel. Individuals are ranked by ascending fitness
// (rank 1 = worst); tied fitness values share their average rank. Returns
// the selected index with probability rank / sum(ranks).
std::vector<double> RouletteRanks(const std::vector<double>& fitness);
std::size_t RankRoulette(const std::vector<double>& fitness, Rng& rng);

// Single-point crossover with cut in [1, D - 1]:
// child1 = a[0, cut) + b[cut, D), child2 = b[0, cut) + a[cut, D).
std::pair<Chromosome, Chromosome> CrossoverAt(const Chromosome& a,
                                              const Chromosome& b,
                                              std::size_t cut);
std::pair<Chromosome, Chromosome> Crossover(const Chromosome& a,
                                            const Chromosome& b, Rng& rng);

// Flips each bit independently with probability `rate`.
Chromosome Mutate(const Chromosome& c, double rate, Rng& rng);

// Replacement rule for one offspring of parents at indices a and b:
// better than both parents -> replaces the parent at smaller Hamming
// distance (ties -> lower index); between the parents -> replaces the worse
// parent; otherwise -> replaces the population's worst member (ties ->
// lower index). Parent reports are passed explicitly because a sibling may
// already have overwritten a parent slot. Returns the replaced index.
std::size_t Replace(std::vector<FitnessReport>& population, std::size_t a,
                    const FitnessReport& parent_a, std::size_t b,
                    const FitnessReport& parent_b, FitnessReport offspring);

struct GaResult {
  FitnessReport best;
  // Every evaluated chromosome: the initial population as generation 0,
  // then each generation's offspring.
  std::vector<FitnessReport> history;
  // Best-ever fitness after generation g (index 0 = initial population).
  std::vector<double> best_fitness_by_generation;
  std::vector<FitnessReport> final_population;
  std::size_t evaluator_calls = 0;
  std::size_t empty_subset_evaluations = 0;
};

// Generational loop: a random initial population (bits Bernoulli(0.5));
// then per generation population_size / 2 parent pairs are drawn from the
// current population, recombined, mutated and evaluated, and each offspring
// is placed by Replace in draw order. J values are cached by bit string.
// Deterministic for a given seed regardless of `workers`.
GaResult RunGa(std::size_t num_features, const GaConfig& config,
               const SubsetEvaluator& evaluator);

// "generation,bits,J,fitness" rows.
void WriteGaHistoryCsv(std::ostream& out, const GaResult& result);

}  // namespace wct

#endif  // WCT_SELECTION_H_
