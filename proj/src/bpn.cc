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

#include "wct/bpn.h"

#include <cmath>
#include <string>

#include "wct/errors.h"
#include "wct/rng.h"

namespace wct {

int HiddenSizeRule(int input_dim) {
  if (input_dim < 1) throw ConfigError("input_dim must be >= 1");
  return 2 * input_dim + 1;
}

BpnModel BpnModel::Zeros(int input_dim, int hidden_dim) {
  BpnModel m;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.w1.assign(static_cast<std::size_t>(input_dim) * hidden_dim, 0.0);
  m.b1.assign(hidden_dim, 0.0);
  m.w2.assign(hidden_dim, 0.0);
  return m;
}

void BpnModel::Validate() const {
  if (input_dim < 1 || hidden_dim < 1) throw DataError("BPN dims must be >= 1");
  if (w1.size() != static_cast<std::size_t>(input_dim) * hidden_dim ||
      b1.size() != static_cast<std::size_t>(hidden_dim) ||
      w2.size() != static_cast<std::size_t>(hidden_dim)) {
    throw DataError("BPN weight shapes do not match dims");
  }
  for (const auto* v : {&w1, &b1, &w2}) {
    for (const double x : *v) {
      if (!std::isfinite(x)) throw DataError("non-finite BPN weight");
    }
  }
  if (!std::isfinite(b2)) throw DataError("non-finite BPN weight");
}

void BpnConfig::Validate() const {
  if (learning_rate < 0.0 || momentum < 0.0) {
    throw ConfigError("BPN rates must be >= 0");
  }
  if (!(target_error > 0.0)) throw ConfigError("BPN target_error must be > 0");
  if (max_epochs < 0) throw ConfigError("BPN max_epochs must be >= 0");
  if (init_range < 0.0) throw ConfigError("BPN init_range must be >= 0");
}

double Sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

namespace {

void CheckInput(const BpnModel& m, const FeatureVector& x) {
  if (x.size() != static_cast<std::size_t>(m.input_dim)) {
    throw DataError("BPN input has dimension " + std::to_string(x.size()) +
                    ", model expects " + std::to_string(m.input_dim));
  }
}

double Target(int label) { return label == kAbnormal ? 1.0 : 0.0; }

// Hidden activations into `hidden`; returns the output activation.
double ForwardInto(const BpnModel& m, const FeatureVector& x,
                   std::vector<double>& hidden) {
  hidden.resize(m.hidden_dim);
  double out = m.b2;
  for (int h = 0; h < m.hidden_dim; ++h) {
    double z = m.b1[h];
    const double* row = m.w1.data() + static_cast<std::size_t>(h) * m.input_dim;
    for (int i = 0; i < m.input_dim; ++i) z += row[i] * x[i];
    hidden[h] = Sigmoid(z);
    out += m.w2[h] * hidden[h];
  }
  return Sigmoid(out);
}

}  // namespace

double Forward(const BpnModel& m, const FeatureVector& x) {
  CheckInput(m, x);
  std::vector<double> hidden;
  return ForwardInto(m, x, hidden);
}

double Mse(const BpnModel& m, const LabeledDataset& data) {
  if (data.size() == 0) throw DataError("MSE of empty dataset");
  double sum = 0.0;
  std::vector<double> hidden;
  for (std::size_t n = 0; n < data.size(); ++n) {
    CheckInput(m, data.vectors[n]);
    const double e = ForwardInto(m, data.vectors[n], hidden) - Target(data.labels[n]);
    sum += e * e;
  }
  return sum / static_cast<double>(data.size());
}

BpnGradient MseGradient(const BpnModel& m, const LabeledDataset& data) {
  if (data.size() == 0) throw DataError("gradient of empty dataset");
  BpnGradient g;
  g.w1.assign(m.w1.size(), 0.0);
  g.b1.assign(m.b1.size(), 0.0);
  g.w2.assign(m.w2.size(), 0.0);
  const double scale = 2.0 / static_cast<double>(data.size());
  std::vector<double> hidden;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const auto& x = data.vectors[n];
    CheckInput(m, x);
    const double out = ForwardInto(m, x, hidden);
    // d(MSE)/d(output pre-activation) for this example.
    const double delta_out =
        scale * (out - Target(data.labels[n])) * out * (1.0 - out);
    g.b2 += delta_out;
    for (int h = 0; h < m.hidden_dim; ++h) {
      g.w2[h] += delta_out * hidden[h];
      const double delta_h = delta_out * m.w2[h] * hidden[h] * (1.0 - hidden[h]);
      g.b1[h] += delta_h;
      double* row = g.w1.data() + static_cast<std::size_t>(h) * m.input_dim;
      for (int i = 0; i < m.input_dim; ++i) row[i] += delta_h * x[i];
    }
  }
  return g;
}

BpnModel InitBpn(int input_dim, const BpnConfig& config) {
  const int hidden =
      config.hidden_dim > 0 ? config.hidden_dim : HiddenSizeRule(input_dim);
  BpnModel m = BpnModel::Zeros(input_dim, hidden);
  Rng rng(DeriveSeed(config.seed, "bpn-init"));
  const double r = config.init_range;
  for (double& w : m.w1) w = rng.Uniform(-r, r);
  for (double& w : m.b1) w = rng.Uniform(-r, r);
  for (double& w : m.w2) w = rng.Uniform(-r, r);
  m.b2 = rng.Uniform(-r, r);
  return m;
}

BpnTrainResult TrainBpn(const LabeledDataset& data, const BpnConfig& config) {
  data.Validate();
  if (data.size() == 0) throw DataError("BPN training needs data");
  return TrainBpn(data, config,
                  InitBpn(static_cast<int>(data.dim()), config));
}

BpnTrainResult TrainBpn(const LabeledDataset& data, const BpnConfig& config,
                        BpnModel initial) {
  config.Validate();
  data.Validate();
  initial.Validate();
  BpnTrainResult result;
  result.model = std::move(initial);
  BpnModel& m = result.model;
  const double lr_out = config.learning_rate;
  const double lr_hidden = config.hidden_learning_rate >= 0.0
                               ? config.hidden_learning_rate
                               : config.learning_rate;
  BpnGradient velocity{std::vector<double>(m.w1.size(), 0.0),
                       std::vector<double>(m.b1.size(), 0.0),
                       std::vector<double>(m.w2.size(), 0.0), 0.0};
  auto step = [&](std::vector<double>& w, std::vector<double>& v,
                  const std::vector<double>& grad, double lr) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      v[k] = -lr * grad[k] + config.momentum * v[k];
      w[k] += v[k];
    }
  };
  double mse = Mse(m, data);
  result.mse_history.push_back(mse);
  int epoch = 0;
  while (mse > config.target_error && epoch < config.max_epochs) {
    const BpnGradient g = MseGradient(m, data);
    step(m.w1, velocity.w1, g.w1, lr_hidden);
    step(m.b1, velocity.b1, g.b1, lr_hidden);
    step(m.w2, velocity.w2, g.w2, lr_out);
    velocity.b2 = -lr_out * g.b2 + config.momentum * velocity.b2;
    m.b2 += velocity.b2;
    ++epoch;
    mse = Mse(m, data);
    if (!std::isfinite(mse)) {
      throw DataError("BPN training diverged at epoch " + std::to_string(epoch));
    }
    result.mse_history.push_back(mse);
  }
  result.epochs = epoch;
  result.final_mse = mse;
  return result;
}

BpnPrediction PredictBpn(const BpnModel& m, const FeatureVector& x) {
  const double score = Forward(m, x);
  return {score >= 0.5 ? kAbnormal : kNormal, score};
}

double ScoreBpnRaw(const BpnModel& m, const FeatureVector& raw) {
  return Forward(m, m.pathway.Apply(raw));
}

nlohmann::json ToJson(const BpnModel& m, const BpnConfig& config) {
  return {{"format", "wct-bpn"},
          {"version", kBpnModelVersion},
          {"input_dim", m.input_dim},
          {"hidden_dim", m.hidden_dim},
          {"w1", m.w1},
          {"b1", m.b1},
          {"w2", m.w2},
          {"b2", m.b2},
          {"pathway", ToJson(m.pathway)},
          {"training",
           {{"seed", config.seed},
            {"learning_rate", config.learning_rate},
            {"hidden_learning_rate", config.hidden_learning_rate},
            {"momentum", config.momentum},
            {"target_error", config.target_error},
            {"max_epochs", config.max_epochs},
            {"init_range", config.init_range}}}};
}

BpnModel BpnFromJson(const nlohmann::json& j) {
  if (j.value("format", "") != "wct-bpn") throw DataError("not a BPN model");
  if (j.at("version").get<int>() != kBpnModelVersion) {
    throw DataError("unsupported BPN model version");
  }
  BpnModel m;
  m.input_dim = j.at("input_dim").get<int>();
  m.hidden_dim = j.at("hidden_dim").get<int>();
  m.w1 = j.at("w1").get<std::vector<double>>();
  m.b1 = j.at("b1").get<std::vector<double>>();
  m.w2 = j.at("w2").get<std::vector<double>>();
  m.b2 = j.at("b2").get<double>();
  m.pathway = PathwayFromJson(j.at("pathway"));
  m.Validate();
  if (!m.pathway.subset.empty() &&
      m.pathway.subset.size() != static_cast<std::size_t>(m.input_dim)) {
    throw DataError("BPN input dimension does not match its feature subset");
  }
  return m;
}

}  // namespace wct
