// Copyright 2026 The Formalism Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Multi-layer perceptron for the holistic formalism label.
//
// Topology 11 -> hidden... -> 1: rectified-linear hidden layers with inverted
// dropout during training, a single logistic output giving the probability
// of the non-formalistic class. Inputs are standardized with a Scaler fitted
// on the training set and stored with the model.
//
// Training is mini-batch, single-threaded and fully determined by the seed:
// initialization, shuffling and dropout masks all draw from one Rng. Early
// stopping restores the parameters of the best validation epoch.

#ifndef FORMALISM_MLP_HPP_
#define FORMALISM_MLP_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formalism/features.hpp"

namespace formalism {

enum class LossKind : std::uint8_t { kBce, kWeightedBce, kAsymmetric };
enum class OptimizerKind : std::uint8_t { kAdam, kSgd };
enum class EarlyStopMonitor : std::uint8_t { kValidationLoss, kValidationMacroF1 };

std::string_view to_string(LossKind k);
std::optional<LossKind> parse_loss_kind(std::string_view s);

struct MlpConfig {
  std::vector<std::size_t> hidden_sizes{20, 50};
  std::vector<double> dropout_rates{0.1, 0.4};
  double learning_rate = 1e-3;
  std::size_t batch_size = 8;
  std::size_t early_stopping_patience = 3;
  std::size_t max_epochs = 200;
  std::uint64_t seed = 0;
  LossKind loss = LossKind::kBce;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  EarlyStopMonitor monitor = EarlyStopMonitor::kValidationLoss;
  // Asymmetric loss: focusing exponents and negative probability margin.
  double gamma_pos = 0.0;
  double gamma_neg = 4.0;
  double asym_margin = 0.05;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;

  // Throws ValidationError when a hyperparameter is out of range.
  void validate() const;
};

// Per-sample loss on the output logit. pos_weight scales the positive term of
// the weighted cross-entropy and is ignored by the other kinds.
struct Loss {
  LossKind kind = LossKind::kBce;
  double pos_weight = 1.0;
  double gamma_pos = 0.0;
  double gamma_neg = 4.0;
  double margin = 0.05;

  double value(double logit, bool positive) const;
  double derivative(double logit, bool positive) const;
};

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // outputs x inputs, row-major
  std::vector<double> biases;
};

// Dense ReLU stack with a single linear output unit (the logit).
class Network {
 public:
  Network() = default;
  // sizes = {inputs, hidden..., 1}.
  explicit Network(std::vector<std::size_t> sizes);

  std::vector<std::size_t> topology() const;
  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  double logit(std::span<const double> input) const;

  std::size_t num_parameters() const;
  // Flat view: layer by layer, weights then biases.
  double& parameter(std::size_t k);
  double parameter(std::size_t k) const;

  // Loss and its gradient for one sample without dropout; gradient is
  // overwritten, flat layout as parameter().
  double loss_and_gradient(std::span<const double> input, bool positive,
                           const Loss& loss, std::vector<double>& gradient) const;

  friend bool operator==(const Network&, const Network&);

 private:
  std::vector<DenseLayer> layers_;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
  double validation_macro_f1 = 0.0;
};

class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(Network network, Scaler scaler, MlpConfig config, Loss loss);

  // Probability of non-formalistic; deterministic, no dropout.
  double predict(const FeatureVector& v) const;
  bool predict_non_formalistic(const FeatureVector& v) const {
    return predict(v) >= 0.5;
  }
  double predict_scaled(std::span<const double> scaled) const;

  const Network& network() const { return network_; }
  Network& network() { return network_; }
  const Scaler& scaler() const { return scaler_; }
  const MlpConfig& config() const { return config_; }
  const Loss& loss() const { return loss_; }
  const std::vector<EpochRecord>& history() const { return history_; }
  std::size_t best_epoch() const { return best_epoch_; }

  void set_history(std::vector<EpochRecord> h, std::size_t best_epoch) {
    history_ = std::move(h);
    best_epoch_ = best_epoch;
  }

 private:
  Network network_;
  Scaler scaler_;
  MlpConfig config_;
  Loss loss_;
  std::vector<EpochRecord> history_;
  std::size_t best_epoch_ = 0;
};

// Throws ValidationError on empty sets or bad config and DivergenceError if
// the loss becomes non-finite.
MlpModel train_mlp(std::span<const LabeledVector> train,
                   std::span<const LabeledVector> validation,
                   const MlpConfig& config);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::size_t worst_parameter = 0;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

// Central differences against backprop for every parameter, on the model's
// own loss, with inputs scaled by the model's scaler.
GradientCheckResult gradient_check(const MlpModel& model,
                                   const LabeledVector& sample, double epsilon);

// Self-describing JSON record; doubles stored as 16-digit hex bit patterns
// so a save/load round trip is exact.
void write_model(std::ostream& out, const MlpModel& model);
MlpModel read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const MlpModel& model);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace formalism

#endif  // FORMALISM_MLP_HPP_
