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

#include "wct/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wct/errors.h"
#include "wct/rng.h"

namespace wct {

void KernelSpec::Validate() const {
  if (kind == Kind::kPolynomial && degree < 1) {
    throw ConfigError("polynomial degree must be >= 1");
  }
  if (kind == Kind::kGaussian && !(gamma > 0.0)) {
    throw ConfigError("gaussian gamma must be > 0");
  }
}

std::string KernelSpec::Name() const {
  switch (kind) {
    case Kind::kLinear:
      return "linear";
    case Kind::kPolynomial:
      return "polynomial";
    case Kind::kGaussian:
      return "gaussian";
  }
  return "?";
}

KernelSpec::Kind ParseKernelKind(const std::string& name) {
  if (name == "linear") return KernelSpec::Kind::kLinear;
  if (name == "polynomial") return KernelSpec::Kind::kPolynomial;
  if (name == "gaussian") return KernelSpec::Kind::kGaussian;
  throw ConfigError("unknown kernel '" + name + "'");
}

double KernelEval(const KernelSpec& k, const FeatureVector& x,
                  const FeatureVector& y) {
  if (x.size() != y.size()) {
    throw DataError("kernel arguments have dimensions " +
                    std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  switch (k.kind) {
    case KernelSpec::Kind::kLinear: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      return dot;
    }
    case KernelSpec::Kind::kPolynomial: {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      return std::pow(dot + k.coef0, k.degree);
    }
    case KernelSpec::Kind::kGaussian: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        d2 += d * d;
      }
      return std::exp(-k.gamma * d2);
    }
  }
  return 0.0;
}

void SvmConfig::Validate() const {
  if (!(c > 0.0)) throw ConfigError("SVM C must be > 0");
  if (!(tol > 0.0)) throw ConfigError("SVM tol must be > 0");
  if (max_passes < 1) throw ConfigError("SVM max_passes must be >= 1");
}

namespace {

class SmoSolver {
 public:
  SmoSolver(const LabeledDataset& data, const KernelSpec& kernel,
            const SvmConfig& config)
      : n_(data.size()),
        y_(data.labels),
        c_(config.c),
        tol_(config.tol),
        alpha_(n_, 0.0),
        gram_(n_ * n_),
        rng_(DeriveSeed(config.seed, "smo")) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        const double k = KernelEval(kernel, data.vectors[i], data.vectors[j]);
        gram_[i * n_ + j] = k;
        gram_[j * n_ + i] = k;
      }
    }
    // With all alphas zero, f = bias = 0, so E_i = -y_i.
    error_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];
  }

  void Solve(int max_passes) {
    bool examine_all = true;
    int stalled = 0;
    double last_objective = Objective();
    const std::size_t max_sweeps = 1000 + 100 * n_;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
      int changed = 0;
      if (examine_all) {
        for (std::size_t i = 0; i < n_; ++i) changed += ExamineExample(i);
      } else {
        for (std::size_t i = 0; i < n_; ++i) {
          if (IsUnbounded(i)) changed += ExamineExample(i);
        }
      }
      ++sweeps_;
      if (examine_all && changed == 0) {
        converged_ = true;
        return;
      }
      if (examine_all) {
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
      const double objective = Objective();
      if (objective - last_objective <= 1e-12 * std::max(1.0, std::abs(objective))) {
        if (++stalled >= max_passes) return;
      } else {
        stalled = 0;
      }
      last_objective = objective;
    }
  }

  double K(std::size_t i, std::size_t j) const { return gram_[i * n_ + j]; }
  const std::vector<double>& alpha() const { return alpha_; }
  bool converged() const { return converged_; }
  int sweeps() const { return sweeps_; }

  // Bias averaged over unbounded support vectors; when none exist, the
  // midpoint of the interval allowed by the bounded multipliers.
  double FinalBias() const {
    double sum = 0.0;
    int count = 0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (alpha_[j] > 0.0) s += alpha_[j] * y_[j] * K(j, i);
      }
      const double g = y_[i] - s;
      if (IsUnbounded(i)) {
        sum += g;
        ++count;
      } else if ((alpha_[i] <= kBoundEps) == (y_[i] > 0)) {
        lower = std::max(lower, g);
      } else {
        upper = std::min(upper, g);
      }
    }
    if (count > 0) return sum / count;
    if (std::isfinite(lower) && std::isfinite(upper)) return 0.5 * (lower + upper);
    if (std::isfinite(lower)) return lower;
    if (std::isfinite(upper)) return upper;
    return 0.0;
  }

 private:
  static constexpr double kBoundEps = 1e-12;

  bool IsUnbounded(std::size_t i) const {
    return alpha_[i] > kBoundEps && alpha_[i] < c_ - kBoundEps;
  }

  double Objective() const {
    double sum_alpha = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha_[i] == 0.0) continue;
      sum_alpha += alpha_[i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (alpha_[j] == 0.0) continue;
        quad += alpha_[i] * alpha_[j] * y_[i] * y_[j] * K(i, j);
      }
    }
    return sum_alpha - 0.5 * quad;
  }

  int ExamineExample(std::size_t i2) {
    const double r2 = error_[i2] * y_[i2];
    if (!((r2 < -tol_ && alpha_[i2] < c_) || (r2 > tol_ && alpha_[i2] > 0.0))) {
      return 0;
    }
    std::size_t num_unbounded = 0;
    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!IsUnbounded(i)) continue;
      ++num_unbounded;
      const double gap = std::abs(error_[i] - error_[i2]);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (num_unbounded > 1 && best < n_ && TakeStep(best, i2)) return 1;
    const std::size_t start_unbounded = rng_.UniformIndex(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t i1 = (start_unbounded + k) % n_;
      if (IsUnbounded(i1) && TakeStep(i1, i2)) return 1;
    }
    const std::size_t start_all = rng_.UniformIndex(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t i1 = (start_all + k) % n_;
      if (TakeStep(i1, i2)) return 1;
    }
    return 0;
  }

  bool TakeStep(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1];
    const double a2 = alpha_[i2];
    const int y1 = y_[i1];
    const int y2 = y_[i2];
    const double e1 = error_[i1];
    const double e2 = error_[i2];
    const double s = y1 * y2;
    double lo;
    double hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c_, c_ + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c_);
      hi = std::min(c_, a1 + a2);
    }
    if (hi - lo <= 0.0) return false;
    const double k11 = K(i1, i1);
    const double k12 = K(i1, i2);
    const double k22 = K(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;
    double a2_new;
    if (eta > 1e-12) {
      a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Objective along the constraint line is linear; take the better end.
      const double f1 = y1 * (e1 + y1) - a1 * k11 - s * a2 * k12;
      const double f2 = y2 * (e2 + y2) - s * a1 * k12 - a2 * k22;
      const double l1 = a1 + s * (a2 - lo);
      const double h1 = a1 + s * (a2 - hi);
      const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                            0.5 * lo * lo * k22 + s * lo * l1 * k12;
      const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                            0.5 * hi * hi * k22 + s * hi * h1 * k12;
      if (obj_lo < obj_hi - 1e-12) {
        a2_new = lo;
      } else if (obj_lo > obj_hi + 1e-12) {
        a2_new = hi;
      } else {
        return false;
      }
    }
    if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12)) return false;
    double a1_new = a1 + s * (a2 - a2_new);
    if (a1_new < 0.0) a1_new = 0.0;
    if (a1_new > c_) a1_new = c_;
    const double d1 = y1 * (a1_new - a1);
    const double d2 = y2 * (a2_new - a2);
    // Bias that zeroes E1 (or E2) after the update.
    const double b1 = bias_ - e1 - d1 * k11 - d2 * k12;
    const double b2 = bias_ - e2 - d1 * k12 - d2 * k22;
    double bias_new;
    if (a1_new > kBoundEps && a1_new < c_ - kBoundEps) {
      bias_new = b1;
    } else if (a2_new > kBoundEps && a2_new < c_ - kBoundEps) {
      bias_new = b2;
    } else {
      bias_new = 0.5 * (b1 + b2);
    }
    const double db = bias_new - bias_;
    for (std::size_t i = 0; i < n_; ++i) {
      error_[i] += d1 * K(i1, i) + d2 * K(i2, i) + db;
    }
    bias_ = bias_new;
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    return true;
  }

  std::size_t n_;
  std::vector<int> y_;
  double c_;
  double tol_;
  std::vector<double> alpha_;
  std::vector<double> gram_;
  std::vector<double> error_;
  double bias_ = 0.0;
  Rng rng_;
  bool converged_ = false;
  int sweeps_ = 0;
};

constexpr double kSupportVectorThreshold = 1e-8;

}  // namespace

SvmModel TrainSvm(const LabeledDataset& data, const KernelSpec& kernel,
                  const SvmConfig& config) {
  kernel.Validate();
  config.Validate();
  data.Validate();
  if (data.CountLabel(kAbnormal) == 0 || data.CountLabel(kNormal) == 0) {
    throw DataError("SVM training needs examples of both classes");
  }
  SmoSolver solver(data, kernel, config);
  solver.Solve(config.max_passes);

  SvmModel model;
  model.kernel = kernel;
  model.config = config;
  model.iterations = solver.sweeps();
  model.converged = solver.converged();
  model.bias = solver.FinalBias();
  const auto& alpha = solver.alpha();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (alpha[i] > kSupportVectorThreshold) {
      model.support_vectors.push_back(data.vectors[i]);
      model.alphas.push_back(alpha[i]);
      model.sv_labels.push_back(data.labels[i]);
    }
  }
  if (model.support_vectors.empty()) {
    throw DataError("SVM training produced no support vectors");
  }
  return model;
}

double DecisionValue(const SvmModel& m, const FeatureVector& x) {
  if (x.size() != m.dim()) {
    throw DataError("SVM input has dimension " + std::to_string(x.size()) +
                    ", model expects " + std::to_string(m.dim()));
  }
  double f = m.bias;
  for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
    f += m.alphas[i] * m.sv_labels[i] *
         KernelEval(m.kernel, m.support_vectors[i], x);
  }
  return f;
}

int Predict(const SvmModel& m, const FeatureVector& x) {
  return DecisionValue(m, x) >= 0.0 ? kAbnormal : kNormal;
}

double DecisionValueRaw(const SvmModel& m, const FeatureVector& raw) {
  return DecisionValue(m, m.pathway.Apply(raw));
}

double WeightNormSquared(const SvmModel& m) {
  double w2 = 0.0;
  for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
    for (std::size_t j = 0; j < m.support_vectors.size(); ++j) {
      w2 += m.alphas[i] * m.alphas[j] * m.sv_labels[i] * m.sv_labels[j] *
            KernelEval(m.kernel, m.support_vectors[i], m.support_vectors[j]);
    }
  }
  return w2;
}

double DualObjective(const SvmModel& m) {
  double sum = 0.0;
  for (const double a : m.alphas) sum += a;
  return sum - 0.5 * WeightNormSquared(m);
}

double DualConstraintResidual(const SvmModel& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.alphas.size(); ++i) r += m.alphas[i] * m.sv_labels[i];
  return r;
}

nlohmann::json ToJson(const SvmModel& m) {
  nlohmann::json kernel = {{"kind", m.kernel.Name()}};
  if (m.kernel.kind == KernelSpec::Kind::kPolynomial) {
    kernel["degree"] = m.kernel.degree;
    kernel["coef0"] = m.kernel.coef0;
  } else if (m.kernel.kind == KernelSpec::Kind::kGaussian) {
    kernel["gamma"] = m.kernel.gamma;
  }
  return {{"format", "wct-svm"},
          {"version", kSvmModelVersion},
          {"kernel", kernel},
          {"pathway", ToJson(m.pathway)},
          {"support_vectors", m.support_vectors},
          {"alphas", m.alphas},
          {"labels", m.sv_labels},
          {"bias", m.bias},
          {"training",
           {{"seed", m.config.seed},
            {"C", m.config.c},
            {"tol", m.config.tol},
            {"max_passes", m.config.max_passes},
            {"sweeps", m.iterations},
            {"converged", m.converged}}}};
}

SvmModel SvmFromJson(const nlohmann::json& j) {
  if (j.value("format", "") != "wct-svm") throw DataError("not an SVM model");
  if (j.at("version").get<int>() != kSvmModelVersion) {
    throw DataError("unsupported SVM model version");
  }
  SvmModel m;
  const auto& k = j.at("kernel");
  m.kernel.kind = ParseKernelKind(k.at("kind").get<std::string>());
  m.kernel.degree = k.value("degree", 3);
  m.kernel.coef0 = k.value("coef0", 1.0);
  m.kernel.gamma = k.value("gamma", 1.0);
  m.kernel.Validate();
  m.pathway = PathwayFromJson(j.at("pathway"));
  m.support_vectors = j.at("support_vectors").get<std::vector<FeatureVector>>();
  m.alphas = j.at("alphas").get<std::vector<double>>();
  m.sv_labels = j.at("labels").get<std::vector<int>>();
  m.bias = j.at("bias").get<double>();
  const auto& t = j.at("training");
  m.config.seed = t.at("seed").get<std::uint64_t>();
  m.config.c = t.at("C").get<double>();
  m.config.tol = t.at("tol").get<double>();
  m.config.max_passes = t.at("max_passes").get<int>();
  m.iterations = t.value("sweeps", 0);
  m.converged = t.value("converged", false);
  if (m.support_vectors.empty() || m.alphas.size() != m.support_vectors.size() ||
      m.sv_labels.size() != m.support_vectors.size()) {
    throw DataError("inconsistent SVM support vector arrays");
  }
  for (const auto& sv : m.support_vectors) {
    if (sv.size() != m.support_vectors[0].size()) {
      throw DataError("ragged SVM support vectors");
    }
  }
  if (!m.pathway.subset.empty() && m.dim() != m.pathway.subset.size()) {
    throw DataError("SVM dimension does not match its feature subset");
  }
  return m;
}

}  // namespace wct
