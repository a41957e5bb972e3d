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

#include "wct/selection.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "oracles.h"
#include "wct/errors.h"
#include "wct/rng.h"

namespace wct {
namespace {

GaConfig Config(double w = 0.5, int d = 5) {
  GaConfig c;
  c.penalty_w = w;
  c.target_size = d;
  return c;
}

FitnessReport Report(const std::string& bits, double fitness) {
  FitnessReport r;
  r.chromosome = Chromosome::FromString(bits);
  r.fitness = fitness;
  return r;
}

TEST(FitnessTest, SignedPenaltyTriples) {
  const GaConfig c = Config();
  EXPECT_NEAR(MakeReport(Chromosome::FromString("11111000"), 0.96, c, 0).fitness, 0.96, 1e-12);
  EXPECT_NEAR(MakeReport(Chromosome::FromString("11111110"), 0.96, c, 0).fitness, -0.04, 1e-12);
  EXPECT_NEAR(MakeReport(Chromosome::FromString("11100000"), 0.90, c, 0).fitness, 1.90, 1e-12);
}

TEST(FitnessTest, AbsolutePenaltyAndEmptySubset) {
  GaConfig c = Config();
  c.penalty_mode = PenaltyMode::kAbsolute;
  EXPECT_NEAR(MakeReport(Chromosome::FromString("11100000"), 0.90, c, 0).fitness, -0.10, 1e-12);
  int calls = 0;
  const SubsetEvaluator eval = [&](const std::vector<std::size_t>&) {
    ++calls;
    return 1.0;
  };
  EXPECT_EQ(EvaluateFitness(Chromosome(6), eval, c).fitness, kEmptySubsetFitness);
  EXPECT_EQ(calls, 0);
}

TEST(ChromosomeTest, DecodeEncodeRoundTrip) {
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < 6; ++k)
      if (mask & (1u << k)) idx.push_back(k);
    const Chromosome c = Chromosome::FromIndices(6, idx);
    EXPECT_EQ(Decode(c), idx);
    EXPECT_EQ(Chromosome::FromString(c.ToString()), c);
  }
  EXPECT_EQ(DecodeOneBased(Chromosome::FromString("0110")), (std::vector<std::size_t>{2, 3}));
  EXPECT_THROW(Chromosome::FromString("01x"), DataError);
  EXPECT_THROW(Chromosome::FromIndices(3, {3}), DataError);
}

TEST(RouletteTest, RanksWithTies) {
  EXPECT_EQ(RouletteRanks({0.3, 0.1, 0.2}), (std::vector<double>{3, 1, 2}));
  EXPECT_EQ(RouletteRanks({0.5, 0.5, 0.1}), (std::vector<double>{2.5, 2.5, 1}));
}

TEST(RouletteTest, EmpiricalFrequencies) {
  Rng rng(1);
  int hits = 0;
  for (int i = 0; i < 30000; ++i) hits += RankRoulette({0.1, 0.9}, rng) == 1;
  EXPECT_NEAR(hits / 30000.0, 2.0 / 3.0, 0.02);
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 30000; ++i) ++counts[RankRoulette({1.0, 1.0, 1.0, 1.0}, rng)];
  for (const int c : counts) EXPECT_NEAR(c / 30000.0, 0.25, 0.02);
  EXPECT_EQ(RankRoulette({42.0}, rng), 0u);
  EXPECT_THROW(RankRoulette({}, rng), DataError);
}

TEST(CrossoverTest, Examples) {
  const auto [c1, c2] =
      CrossoverAt(Chromosome::FromString("1111"), Chromosome::FromString("0000"), 2);
  EXPECT_EQ(c1.ToString(), "1100");
  EXPECT_EQ(c2.ToString(), "0011");
  Rng rng(2);
  const Chromosome a = Chromosome::FromString("101101");
  const auto same = Crossover(a, a, rng);
  EXPECT_EQ(same.first, a);
  EXPECT_EQ(same.second, a);
  EXPECT_THROW(Crossover(a, Chromosome(3), rng), DataError);
}

TEST(CrossoverTest, ConservesOnesAndCutRange) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Chromosome a = Mutate(Chromosome(9), 0.5, rng);
    const Chromosome b = Mutate(Chromosome(9), 0.5, rng);
    const auto [x, y] = Crossover(a, b, rng);
    EXPECT_EQ(x.count() + y.count(), a.count() + b.count());
  }
  // With complementary parents the cut is visible; it never falls at 0 or D.
  std::map<std::string, int> seen;
  for (int t = 0; t < 500; ++t)
    ++seen[Crossover(Chromosome::FromString("11111"), Chromosome::FromString("00000"), rng).first.ToString()];
  EXPECT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen.count("11111"), 0u);
  EXPECT_EQ(seen.count("00000"), 0u);
}

TEST(MutateTest, RatesZeroOneAndMean) {
  Rng rng(4);
  const Chromosome c = Chromosome::FromString("1100101");
  EXPECT_EQ(Mutate(c, 0.0, rng), c);
  EXPECT_EQ(Mutate(c, 1.0, rng).ToString(), "0011010");
  double flips = 0.0;
  for (int t = 0; t < 10000; ++t) flips += HammingDistance(Mutate(Chromosome(27), 0.1, rng), Chromosome(27));
  EXPECT_NEAR(flips / 10000.0, 2.7, 0.1);
}

TEST(ReplaceTest, BetterThanBothReplacesSimilarParent) {
  std::vector<FitnessReport> pop = {Report("1100", 0.5), Report("0011", 0.4), Report("1111", 0.1)};
  const auto a = pop[0];
  const auto b = pop[1];
  EXPECT_EQ(Replace(pop, 0, a, 1, b, Report("1101", 0.9)), 0u);
  EXPECT_EQ(pop[0].chromosome.ToString(), "1101");
}

TEST(ReplaceTest, HammingTieGoesToLowerIndex) {
  std::vector<FitnessReport> pop = {Report("1100", 0.5), Report("0011", 0.4), Report("1111", 0.1)};
  const auto a = pop[0];
  const auto b = pop[1];
  EXPECT_EQ(Replace(pop, 1, b, 0, a, Report("1010", 0.9)), 0u);
}

TEST(ReplaceTest, BetweenParentsReplacesInferior) {
  std::vector<FitnessReport> pop = {Report("1100", 0.8), Report("0011", 0.2), Report("1111", 0.1)};
  const auto a = pop[0];
  const auto b = pop[1];
  EXPECT_EQ(Replace(pop, 0, a, 1, b, Report("1000", 0.5)), 1u);
}

TEST(ReplaceTest, WorseThanBothReplacesPopulationMinimum) {
  std::vector<FitnessReport> pop = {Report("1100", 0.8), Report("0011", 0.6), Report("1111", 0.1)};
  const auto a = pop[0];
  const auto b = pop[1];
  EXPECT_EQ(Replace(pop, 0, a, 1, b, Report("1000", 0.3)), 2u);
  EXPECT_EQ(pop.size(), 3u);
}

// J drawn once per subset from a seeded table; no structure to exploit.
SubsetEvaluator TableEvaluator(std::uint64_t seed) {
  return [seed](const std::vector<std::size_t>& subset) {
    std::uint64_t mask = 0;
    for (const auto k : subset) mask |= 1ull << k;
    Rng rng(DeriveSeed(seed, std::to_string(mask)));
    return std::floor(rng.Uniform() * 1000.0) / 1000.0;
  };
}

TEST(RunGaTest, FindsExhaustiveOptimumOnRandomTable) {
  const SubsetEvaluator eval = TableEvaluator(17);
  GaConfig c = Config(0.5, 4);
  c.seed = 5;
  const auto opt = oracle::ExhaustiveSubsetSearch(8, 8, 0.5, 4, eval);
  EXPECT_NEAR(RunGa(8, c, eval).best.fitness, opt.best_fitness, 1e-12);

  c.penalty_mode = PenaltyMode::kAbsolute;
  double best = kEmptySubsetFitness;
  for (std::uint32_t mask = 1; mask < 256; ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < 8; ++k)
      if (mask & (1u << k)) s.push_back(k);
    best = std::max(best, eval(s) - 0.5 * std::abs(static_cast<double>(s.size()) - 4.0));
  }
  EXPECT_NEAR(RunGa(8, c, eval).best.fitness, best, 1e-12);
}

TEST(RunGaTest, InvariantsAndDeterminism) {
  GaConfig c = Config(0.5, 4);
  c.seed = 8;
  c.generations = 20;
  const GaResult a = RunGa(10, c, TableEvaluator(3));
  const GaResult b = RunGa(10, c, TableEvaluator(3));
  std::ostringstream ha, hb;
  WriteGaHistoryCsv(ha, a);
  WriteGaHistoryCsv(hb, b);
  EXPECT_EQ(ha.str(), hb.str());
  EXPECT_EQ(ha.str().substr(0, 26), "generation,bits,J,fitness\n");
  EXPECT_EQ(a.final_population.size(), 30u);
  EXPECT_EQ(a.history.size(), 30u * 21u);
  EXPECT_EQ(a.best_fitness_by_generation.size(), 21u);
  for (std::size_t g = 1; g < a.best_fitness_by_generation.size(); ++g)
    EXPECT_GE(a.best_fitness_by_generation[g], a.best_fitness_by_generation[g - 1]);
  for (const auto& r : a.history) {
    if (r.chromosome.count() == 0) continue;
    EXPECT_DOUBLE_EQ(r.fitness, r.j - 0.5 * (static_cast<double>(r.chromosome.count()) - 4.0));
  }
  EXPECT_LE(a.evaluator_calls, 1023u);
}

TEST(RunGaTest, ParallelEvaluationMatchesSerial) {
  GaConfig c = Config(0.5, 4);
  c.seed = 9;
  c.generations = 10;
  const GaResult serial = RunGa(12, c, TableEvaluator(4));
  c.workers = 4;
  const GaResult parallel = RunGa(12, c, TableEvaluator(4));
  ASSERT_EQ(serial.history.size(), parallel.history.size());
  for (std::size_t i = 0; i < serial.history.size(); ++i)
    EXPECT_EQ(serial.history[i].chromosome, parallel.history[i].chromosome);
}

TEST(RunGaTest, OneGenerationBestIsMaxOfHistory) {
  GaConfig c = Config(0.5, 4);
  c.seed = 10;
  c.generations = 1;
  const GaResult r = RunGa(6, c, TableEvaluator(5));
  double best = kEmptySubsetFitness;
  for (const auto& h : r.history) best = std::max(best, h.fitness);
  EXPECT_EQ(r.best.fitness, best);
}

TEST(RunGaTest, NoMutationOnlyRecombines) {
  // With one feature, crossover copies its parents, so without mutation no
  // chromosome outside the initial population can appear.
  GaConfig c = Config(0.5, 4);
  c.mutation_rate = 0.0;
  c.population_size = 4;
  c.generations = 5;
  c.seed = 1;
  const GaResult r = RunGa(1, c, [](const auto&) { return 0.5; });
  std::set<std::string> initial;
  for (const auto& h : r.history)
    if (h.generation == 0) initial.insert(h.chromosome.ToString());
  for (const auto& h : r.history) EXPECT_EQ(initial.count(h.chromosome.ToString()), 1u);
  EXPECT_EQ(r.final_population.size(), 4u);
}

TEST(RunGaTest, EvaluatorErrorsCarryGeneration) {
  GaConfig c = Config();
  c.generations = 2;
  try {
    RunGa(5, c, [](const auto&) -> double { throw DataError("boom"); });
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("GA generation 0"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
}

TEST(GaConfigTest, Validation) {
  GaConfig c;
  c.population_size = 3;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = GaConfig{};
  c.mutation_rate = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
}

}  // namespace
}  // namespace wct
