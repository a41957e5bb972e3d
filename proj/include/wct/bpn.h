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

#ifndef WCT_BPN_H_
#define WCT_BPN_H_

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "wct/features.h"

namespace wct {

// Hidden layer width: twice the input width plus one.
int HiddenSizeRule(int input_dim);

// One-hidden-layer sigmoid network with a single sigmoid output.
struct BpnModel {
  int input_dim = 0;
  int hidden_dim = 0;
  std::vector<double> w1;  // hidden_dim x input_dim, row-major
  std::vector<double> b1;  // hidden_dim
  std::vector<double> w2;  // hidden_dim
  double b2 = 0.0;
  FeaturePathway pathway;

  static BpnModel Zeros(int input_dim, int hidden_dim);
  void Validate() const;
};

struct BpnConfig {
  double learning_rate = 0.4;
  // Rate for the input->hidden weights; negative means "same as
  // learning_rate".
  double hidden_learning_rate = -1.0;
  double momentum = 0.2;
  double target_error = 0.01;
  int max_epochs = 5000;
  double init_range = 0.5;
  // 0 means HiddenSizeRule(input_dim).
  int hidden_dim = 0;
  std::uint64_t seed = 0;

  void Validate() const;
};

double Sigmoid(double t);

// sigma(w2 . sigma(W1 x + b1) + b2), in (0, 1).
double Forward(const BpnModel& m, const FeatureVector& x);

// Mean squared error over the dataset with targets -1 -> 0, +1 -> 1.
double Mse(const BpnModel& m, const LabeledDataset& data);

// Gradient of Mse with respect to every parameter, laid out like the model.
struct BpnGradient {
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;
};
BpnGradient MseGradient(const BpnModel& m, const LabeledDataset& data);

// Weights drawn uniformly from [-init_range, init_range].
BpnModel InitBpn(int input_dim, const BpnConfig& config);

struct BpnTrainResult {
  BpnModel model;
  int epochs = 0;
  double final_mse = 0.0;
  // MSE before each update (index 0 = initial weights).
  std::vector<double> mse_history;
};

// Full-batch gradient descent with momentum on the MSE. Stops when the MSE
// reaches target_error or after max_epochs updates. Throws DataError naming
// the epoch if the loss becomes non-finite.
BpnTrainResult TrainBpn(const LabeledDataset& data, const BpnConfig& config);
// Same, starting from given weights.
BpnTrainResult TrainBpn(const LabeledDataset& data, const BpnConfig& config,
                        BpnModel initial);

struct BpnPrediction {
  int label = 0;
  double score = 0.0;
};
// score = Forward(m, x); label = +1 when score >= 0.5.
BpnPrediction PredictBpn(const BpnModel& m, const FeatureVector& x);
double ScoreBpnRaw(const BpnModel& m, const FeatureVector& raw);

inline constexpr int kBpnModelVersion = 1;
nlohmann::json ToJson(const BpnModel& m, const BpnConfig& config);
BpnModel BpnFromJson(const nlohmann::json& j);

}  // namespace wct

#endif  // WCT_BPN_H_
