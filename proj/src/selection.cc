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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "wct/errors.h"
#include "wct/parallel.h"
#include "wct/text.h"

namespace wct {

Chromosome::Chromosome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

Chromosome Chromosome::FromString(std::string_view s) {
  Chromosome c(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] != '0' && s[k] != '1') {
      throw DataError("chromosome strings contain only '0' and '1'");
    }
    c.bits_[k] = s[k] == '1';
  }
  return c;
}

Chromosome Chromosome::FromIndices(std::size_t length,
                                   const std::vector<std::size_t>& indices) {
  Chromosome c(length);
  for (const std::size_t k : indices) {
    if (k >= length) throw DataError("feature index out of chromosome range");
    c.bits_[k] = 1;
  }
  return c;
}

std::size_t Chromosome::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string Chromosome::ToString() const {
  std::string s(bits_.size(), '0');
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) s[k] = '1';
  }
  return s;
}

std::vector<std::size_t> Decode(const Chromosome& c) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c.test(k)) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> DecodeOneBased(const Chromosome& c) {
  auto out = Decode(c);
  for (auto& k : out) ++k;
  return out;
}

std::size_t HammingDistance(const Chromosome& a, const Chromosome& b) {
  if (a.size() != b.size()) throw DataError("chromosome lengths differ");
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a.test(k) != b.test(k);
  return d;
}

void GaConfig::Validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw ConfigError("GA population size must be even and >= 2");
  }
  if (crossover_prob < 0.0 || crossover_prob > 1.0 || mutation_rate < 0.0 ||
      mutation_rate > 1.0) {
    throw ConfigError("GA probabilities must be in [0, 1]");
  }
  if (generations < 1) throw ConfigError("GA needs at least one generation");
  if (target_size < 0) throw ConfigError("GA target size must be >= 0");
}

double Penalty(std::size_t subset_size, const GaConfig& config) {
  const double excess =
      static_cast<double>(subset_size) - static_cast<double>(config.target_size);
  return config.penalty_w *
         (config.penalty_mode == PenaltyMode::kSigned ? excess : std::abs(excess));
}

FitnessReport MakeReport(const Chromosome& c, double j, const GaConfig& config,
                         int generation) {
  FitnessReport r{c, j, kEmptySubsetFitness, generation};
  if (c.count() > 0) r.fitness = j - Penalty(c.count(), config);
  return r;
}

FitnessReport EvaluateFitness(const Chromosome& c,
                              const SubsetEvaluator& evaluator,
                              const GaConfig& config, int generation) {
  if (c.count() == 0) return MakeReport(c, 0.0, config, generation);
  return MakeReport(c, evaluator(Decode(c)), config, generation);
}

std::vector<double> RouletteRanks(const std::vector<double>& fitness) {
  const std::size_t n = fitness.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fitness[a] < fitness[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && fitness[order[j + 1]] == fitness[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1; ties share the mean.
    const double shared = 0.5 * static_cast<double>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

std::size_t RankRoulette(const std::vector<double>& fitness, Rng& rng) {
  if (fitness.empty()) throw DataError("roulette over an empty population");
  const auto ranks = RouletteRanks(fitness);
  const double total = std::accumulate(ranks.begin(), ranks.end(), 0.0);
  const double u = rng.Uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    acc += ranks[i];
    if (u < acc) return i;
  }
  return ranks.size() - 1;
}

std::pair<Chromosome, Chromosome> CrossoverAt(const Chromosome& a,
                                              const Chromosome& b,
                                              std::size_t cut) {
  if (a.size() != b.size()) throw DataError("crossover of unequal lengths");
  if (cut > a.size()) throw DataError("crossover cut beyond chromosome");
  std::vector<std::uint8_t> c1(a.bits().begin(), a.bits().begin() + cut);
  std::vector<std::uint8_t> c2(b.bits().begin(), b.bits().begin() + cut);
  c1.insert(c1.end(), b.bits().begin() + cut, b.bits().end());
  c2.insert(c2.end(), a.bits().begin() + cut, a.bits().end());
  return {Chromosome(std::move(c1)), Chromosome(std::move(c2))};
}

std::pair<Chromosome, Chromosome> Crossover(const Chromosome& a,
                                            const Chromosome& b, Rng& rng) {
  if (a.size() != b.size()) throw DataError("crossover of unequal lengths");
  if (a.size() < 2) return {a, b};
  const std::size_t cut = 1 + rng.UniformIndex(a.size() - 1);
  return CrossoverAt(a, b, cut);
}

Chromosome Mutate(const Chromosome& c, double rate, Rng& rng) {
  Chromosome out = c;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (rng.Bernoulli(rate)) out.flip(k);
  }
  return out;
}

std::size_t Replace(std::vector<FitnessReport>& population, std::size_t a,
                    const FitnessReport& parent_a, std::size_t b,
                    const FitnessReport& parent_b, FitnessReport offspring) {
  const double fc = offspring.fitness;
  const double fa = parent_a.fitness;
  const double fb = parent_b.fitness;
  std::size_t target;
  if (fc > fa && fc > fb) {
    const std::size_t da = HammingDistance(offspring.chromosome, parent_a.chromosome);
    const std::size_t db = HammingDistance(offspring.chromosome, parent_b.chromosome);
    if (da != db) {
      target = da < db ? a : b;
    } else {
      target = std::min(a, b);
    }
  } else if (fc > std::min(fa, fb)) {
    target = fa < fb ? a : b;
  } else {
    target = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
      if (population[i].fitness < population[target].fitness) target = i;
    }
  }
  population[target] = std::move(offspring);
  return target;
}

namespace {

class CachedEvaluator {
 public:
  CachedEvaluator(const SubsetEvaluator& evaluator, const GaConfig& config,
                  GaResult& result)
      : evaluator_(evaluator), config_(config), result_(result) {}

  // Evaluates a batch; fresh subsets run (possibly in parallel) through the
  // evaluator, cached ones are reused. Order of `chromosomes` is preserved.
  std::vector<FitnessReport> Evaluate(const std::vector<Chromosome>& chromosomes,
                                      int generation) {
    std::vector<std::string> keys;
    std::vector<Chromosome> fresh;
    std::vector<std::string> fresh_keys;
    for (const auto& c : chromosomes) {
      keys.push_back(c.ToString());
      if (c.count() == 0) continue;
      if (cache_.count(keys.back()) == 0 &&
          std::find(fresh_keys.begin(), fresh_keys.end(), keys.back()) ==
              fresh_keys.end()) {
        fresh.push_back(c);
        fresh_keys.push_back(keys.back());
      }
    }
    std::vector<double> values(fresh.size());
    try {
      ParallelFor(
          fresh.size(),
          [&](std::size_t i) { values[i] = evaluator_(Decode(fresh[i])); },
          config_.workers);
    } catch (const std::exception& e) {
      throw Error("GA generation " + std::to_string(generation) +
                  ": fitness evaluation failed: " + e.what());
    }
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      cache_[fresh_keys[i]] = values[i];
    }
    result_.evaluator_calls += fresh.size();
    std::vector<FitnessReport> reports;
    reports.reserve(chromosomes.size());
    for (std::size_t i = 0; i < chromosomes.size(); ++i) {
      if (chromosomes[i].count() == 0) {
        ++result_.empty_subset_evaluations;
        reports.push_back(MakeReport(chromosomes[i], 0.0, config_, generation));
      } else {
        reports.push_back(
            MakeReport(chromosomes[i], cache_.at(keys[i]), config_, generation));
      }
    }
    return reports;
  }

 private:
  const SubsetEvaluator& evaluator_;
  const GaConfig& config_;
  GaResult& result_;
  std::unordered_map<std::string, double> cache_;
};

}  // namespace

GaResult RunGa(std::size_t num_features, const GaConfig& config,
               const SubsetEvaluator& evaluator) {
  config.Validate();
  if (num_features == 0) throw ConfigError("GA needs at least one feature");
  Rng rng(DeriveSeed(config.seed, "ga"));
  GaResult result;
  CachedEvaluator cached(evaluator, config, result);

  std::vector<Chromosome> initial;
  for (int i = 0; i < config.population_size; ++i) {
    Chromosome c(num_features);
    for (std::size_t k = 0; k < num_features; ++k) c.set(k, rng.Bernoulli(0.5));
    initial.push_back(std::move(c));
  }
  std::vector<FitnessReport> population = cached.Evaluate(initial, 0);
  result.history = population;
  result.best = population[0];
  auto track_best = [&](const FitnessReport& r) {
    if (r.fitness > result.best.fitness) result.best = r;
  };
  for (const auto& r : population) track_best(r);
  result.best_fitness_by_generation.push_back(result.best.fitness);

  struct Pairing {
    std::size_t a;
    std::size_t b;
    FitnessReport parent_a;
    FitnessReport parent_b;
  };
  for (int gen = 1; gen <= config.generations; ++gen) {
    std::vector<double> fitness;
    fitness.reserve(population.size());
    for (const auto& r : population) fitness.push_back(r.fitness);
    std::vector<Pairing> pairings;
    std::vector<Chromosome> offspring;
    for (int p = 0; p < config.population_size / 2; ++p) {
      const std::size_t a = RankRoulette(fitness, rng);
      const std::size_t b = RankRoulette(fitness, rng);
      pairings.push_back({a, b, population[a], population[b]});
      auto children = rng.Bernoulli(config.crossover_prob)
                          ? Crossover(population[a].chromosome,
                                      population[b].chromosome, rng)
                          : std::make_pair(population[a].chromosome,
                                           population[b].chromosome);
      offspring.push_back(Mutate(children.first, config.mutation_rate, rng));
      offspring.push_back(Mutate(children.second, config.mutation_rate, rng));
    }
    const std::vector<FitnessReport> reports = cached.Evaluate(offspring, gen);
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const Pairing& pair = pairings[k / 2];
      result.history.push_back(reports[k]);
      track_best(reports[k]);
      Replace(population, pair.a, pair.parent_a, pair.b, pair.parent_b,
              reports[k]);
    }
    result.best_fitness_by_generation.push_back(result.best.fitness);
  }
  result.final_population = std::move(population);
  return result;
}

void WriteGaHistoryCsv(std::ostream& out, const GaResult& result) {
  out << "generation,bits,J,fitness\n";
  for (const auto& r : result.history) {
    out << r.generation << "," << r.chromosome.ToString() << ","
        << FormatReal(r.j) << "," << FormatReal(r.fitness) << "\n";
  }
}

}  // namespace wct
