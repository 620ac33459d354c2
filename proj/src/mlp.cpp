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

#include "formalism/mlp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "formalism/metrics.hpp"
#include "formalism/rng.hpp"
#include "json.hpp"

namespace formalism {
namespace {

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

constexpr int kModelFormatVersion = 1;

double softplus(double x) {
  // log(1 + e^x) without overflow.
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

// Forward-pass record for backprop. activations[0] is the input;
// activations[l + 1] is the (masked) output of layer l.
struct Trace {
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> activations;
};

double forward(const std::vector<DenseLayer>& layers,
               std::span<const double> input, Trace& trace,
               const std::vector<std::vector<double>>* masks) {
  trace.pre.resize(layers.size());
  trace.activations.resize(layers.size() + 1);
  trace.activations[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const auto& in = trace.activations[l];
    auto& z = trace.pre[l];
    z.assign(layer.outputs, 0.0);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      double acc = layer.biases[o];
      const double* w = &layer.weights[o * layer.inputs];
      for (std::size_t i = 0; i < layer.inputs; ++i) acc += w[i] * in[i];
      z[o] = acc;
    }
    auto& out = trace.activations[l + 1];
    out = z;
    if (l + 1 < layers.size()) {
      for (std::size_t o = 0; o < out.size(); ++o) {
        out[o] = out[o] > 0.0 ? out[o] : 0.0;
        if (masks) out[o] *= (*masks)[l][o];
      }
    }
  }
  return trace.pre.back()[0];
}

// Adds d(loss)/d(params) for one traced sample into gradient (flat layout).
void backward(const std::vector<DenseLayer>& layers, const Trace& trace,
              const std::vector<std::vector<double>>* masks, double dlogit,
              double scale, std::vector<double>& gradient) {
  // Flat offsets per layer.
  std::vector<std::size_t> offsets(layers.size());
  std::size_t off = 0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    offsets[l] = off;
    off += layers[l].weights.size() + layers[l].biases.size();
  }
  std::vector<double> delta{dlogit * scale};
  for (std::size_t l = layers.size(); l-- > 0;) {
    const auto& layer = layers[l];
    const auto& in = trace.activations[l];
    double* gw = &gradient[offsets[l]];
    double* gb = gw + layer.weights.size();
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      for (std::size_t i = 0; i < layer.inputs; ++i) {
        gw[o * layer.inputs + i] += delta[o] * in[i];
      }
      gb[o] += delta[o];
    }
    if (l == 0) break;
    std::vector<double> prev(layer.inputs, 0.0);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      const double* w = &layer.weights[o * layer.inputs];
      for (std::size_t i = 0; i < layer.inputs; ++i) prev[i] += w[i] * delta[o];
    }
    const auto& z = trace.pre[l - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      double d = z[i] > 0.0 ? prev[i] : 0.0;
      if (masks) d *= (*masks)[l - 1][i];
      prev[i] = d;
    }
    delta = std::move(prev);
  }
}

Loss make_loss(const MlpConfig& config, double pos_weight) {
  Loss loss;
  loss.kind = config.loss;
  loss.pos_weight = pos_weight;
  loss.gamma_pos = config.gamma_pos;
  loss.gamma_neg = config.gamma_neg;
  loss.margin = config.asym_margin;
  return loss;
}

struct Evaluation {
  double loss = 0.0;
  double macro_f1 = 0.0;
};

Evaluation evaluate(const Network& net, const Loss& loss,
                    const std::vector<std::array<double, kNumFeatures>>& xs,
                    std::span<const LabeledVector> data) {
  Evaluation e;
  auto gold = std::make_unique<bool[]>(data.size());
  auto pred = std::make_unique<bool[]>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    double z = net.logit(xs[i]);
    e.loss += loss.value(z, data[i].non_formalistic);
    gold[i] = data[i].non_formalistic;
    pred[i] = sigmoid(z) >= 0.5;
  }
  e.loss /= static_cast<double>(data.size());
  e.macro_f1 = binary_macro_prf({gold.get(), data.size()},
                                {pred.get(), data.size()})
                   .macro_f1;
  return e;
}

std::string hex(double d) {
  return fmt::format("{:016x}", std::bit_cast<std::uint64_t>(d));
}

double unhex(const json& j) {
  if (!j.is_string()) throw ValidationError("model: expected hex string");
  const auto s = j.get<std::string>();
  if (s.size() != 16) throw ValidationError("model: bad hex double '" + s + "'");
  std::uint64_t bits = 0;
  for (char c : s) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else {
      throw ValidationError("model: bad hex double '" + s + "'");
    }
    bits = (bits << 4) | static_cast<std::uint64_t>(v);
  }
  return std::bit_cast<double>(bits);
}

ordered_json hex_array(std::span<const double> values) {
  auto a = ordered_json::array();
  for (double v : values) a.push_back(hex(v));
  return a;
}

std::vector<double> unhex_array(const json& j) {
  if (!j.is_array()) throw ValidationError("model: expected array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(unhex(v));
  return out;
}

}  // namespace

std::string_view to_string(LossKind k) {
  switch (k) {
    case LossKind::kBce:
      return "bce";
    case LossKind::kWeightedBce:
      return "weighted_bce";
    default:
      return "asymmetric";
  }
}

std::optional<LossKind> parse_loss_kind(std::string_view s) {
  for (auto k : {LossKind::kBce, LossKind::kWeightedBce, LossKind::kAsymmetric}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

void MlpConfig::validate() const {
  if (hidden_sizes.size() != dropout_rates.size()) {
    throw ValidationError("need one dropout rate per hidden layer");
  }
  for (auto h : hidden_sizes) {
    if (h == 0) throw ValidationError("hidden layer sizes must be positive");
  }
  for (double p : dropout_rates) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw ValidationError("dropout rates must lie in [0, 1)");
    }
  }
  if (!(learning_rate > 0.0)) throw ValidationError("learning rate must be positive");
  if (batch_size == 0) throw ValidationError("batch size must be positive");
  if (early_stopping_patience == 0) throw ValidationError("patience must be positive");
  if (max_epochs == 0) throw ValidationError("max_epochs must be positive");
  if (gamma_pos < 0 || gamma_neg < 0 || asym_margin < 0 || asym_margin >= 1) {
    throw ValidationError("asymmetric loss parameters out of range");
  }
}

double Loss::value(double z, bool positive) const {
  switch (kind) {
    case LossKind::kBce:
      return positive ? softplus(-z) : softplus(z);
    case LossKind::kWeightedBce:
      return positive ? pos_weight * softplus(-z) : softplus(z);
    case LossKind::kAsymmetric: {
      double p = sigmoid(z);
      if (positive) return std::pow(1.0 - p, gamma_pos) * softplus(-z);
      double q = std::max(p - margin, 0.0);
      if (q <= 0.0) return 0.0;
      return -std::pow(q, gamma_neg) * std::log1p(-q);
    }
  }
  return 0.0;
}

double Loss::derivative(double z, bool positive) const {
  double p = sigmoid(z);
  switch (kind) {
    case LossKind::kBce:
      return positive ? p - 1.0 : p;
    case LossKind::kWeightedBce:
      return positive ? pos_weight * (p - 1.0) : p;
    case LossKind::kAsymmetric: {
      if (positive) {
        double a = std::pow(1.0 - p, gamma_pos);
        return -gamma_pos * p * a * softplus(-z) - a * (1.0 - p);
      }
      double q = std::max(p - margin, 0.0);
      if (q <= 0.0) return 0.0;
      double dq = -gamma_neg * std::pow(q, gamma_neg - 1.0) * std::log1p(-q) +
                  std::pow(q, gamma_neg) / (1.0 - q);
      return dq * p * (1.0 - p);
    }
  }
  return 0.0;
}

Network::Network(std::vector<std::size_t> sizes) {
  if (sizes.size() < 2 || sizes.back() != 1) {
    throw ValidationError("network topology must end in a single output");
  }
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    DenseLayer layer;
    layer.inputs = sizes[l];
    layer.outputs = sizes[l + 1];
    layer.weights.assign(layer.inputs * layer.outputs, 0.0);
    layer.biases.assign(layer.outputs, 0.0);
    layers_.push_back(std::move(layer));
  }
}

std::vector<std::size_t> Network::topology() const {
  std::vector<std::size_t> t;
  if (layers_.empty()) return t;
  t.push_back(layers_.front().inputs);
  for (const auto& l : layers_) t.push_back(l.outputs);
  return t;
}

double Network::logit(std::span<const double> input) const {
  Trace trace;
  return forward(layers_, input, trace, nullptr);
}

std::size_t Network::num_parameters() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.size() + l.biases.size();
  return n;
}

double& Network::parameter(std::size_t k) {
  for (auto& l : layers_) {
    if (k < l.weights.size()) return l.weights[k];
    k -= l.weights.size();
    if (k < l.biases.size()) return l.biases[k];
    k -= l.biases.size();
  }
  throw std::out_of_range("parameter index");
}

double Network::parameter(std::size_t k) const {
  return const_cast<Network*>(this)->parameter(k);
}

double Network::loss_and_gradient(std::span<const double> input, bool positive,
                                  const Loss& loss,
                                  std::vector<double>& gradient) const {
  gradient.assign(num_parameters(), 0.0);
  Trace trace;
  double z = forward(layers_, input, trace, nullptr);
  backward(layers_, trace, nullptr, loss.derivative(z, positive), 1.0, gradient);
  return loss.value(z, positive);
}

bool operator==(const Network& a, const Network& b) {
  if (a.layers_.size() != b.layers_.size()) return false;
  for (std::size_t l = 0; l < a.layers_.size(); ++l) {
    const auto& x = a.layers_[l];
    const auto& y = b.layers_[l];
    if (x.inputs != y.inputs || x.outputs != y.outputs) return false;
    // Bitwise comparison: -0.0 vs 0.0 and NaN payloads count as different.
    for (std::size_t i = 0; i < x.weights.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(x.weights[i]) !=
          std::bit_cast<std::uint64_t>(y.weights[i])) {
        return false;
      }
    }
    for (std::size_t i = 0; i < x.biases.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(x.biases[i]) !=
          std::bit_cast<std::uint64_t>(y.biases[i])) {
        return false;
      }
    }
  }
  return true;
}

MlpModel::MlpModel(Network network, Scaler scaler, MlpConfig config, Loss loss)
    : network_(std::move(network)),
      scaler_(scaler),
      config_(std::move(config)),
      loss_(loss) {}

double MlpModel::predict_scaled(std::span<const double> scaled) const {
  return sigmoid(network_.logit(scaled));
}

double MlpModel::predict(const FeatureVector& v) const {
  auto scaled = scaler_.apply(v);
  return predict_scaled(scaled);
}

MlpModel train_mlp(std::span<const LabeledVector> train,
                   std::span<const LabeledVector> validation,
                   const MlpConfig& config) {
  config.validate();
  if (train.empty()) throw ValidationError("empty training set");
  if (validation.empty()) throw ValidationError("empty validation set");

  std::vector<FeatureVector> train_x;
  train_x.reserve(train.size());
  for (const auto& s : train) train_x.push_back(s.x);
  Scaler scaler = Scaler::fit(train_x);

  std::vector<std::array<double, kNumFeatures>> xs_train, xs_val;
  for (const auto& s : train) xs_train.push_back(scaler.apply(s.x));
  for (const auto& s : validation) xs_val.push_back(scaler.apply(s.x));

  auto positives = static_cast<std::size_t>(std::count_if(
      train.begin(), train.end(), [](const auto& s) { return s.non_formalistic; }));
  double pos_weight =
      positives == 0 ? 1.0
                     : static_cast<double>(train.size() - positives) /
                           static_cast<double>(positives);
  if (pos_weight <= 0.0) pos_weight = 1.0;
  const Loss loss = make_loss(config, pos_weight);

  std::vector<std::size_t> sizes{kNumFeatures};
  sizes.insert(sizes.end(), config.hidden_sizes.begin(), config.hidden_sizes.end());
  sizes.push_back(1);
  Network net(sizes);

  Rng rng(config.seed);
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    auto& layer = net.layers()[l];
    bool is_output = l + 1 == net.layers().size();
    // He-uniform for rectifier layers, Glorot-uniform for the logistic output.
    double limit = is_output ? std::sqrt(6.0 / static_cast<double>(
                                                   layer.inputs + layer.outputs))
                             : std::sqrt(6.0 / static_cast<double>(layer.inputs));
    for (auto& w : layer.weights) w = rng.uniform(-limit, limit);
  }

  const std::size_t n_params = net.num_parameters();
  std::vector<double> gradient(n_params), m(n_params, 0.0), v(n_params, 0.0);
  std::uint64_t step = 0;

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::vector<double>> masks(config.hidden_sizes.size());
  for (std::size_t l = 0; l < masks.size(); ++l) {
    masks[l].assign(config.hidden_sizes[l], 1.0);
  }
  const bool use_dropout =
      std::any_of(config.dropout_rates.begin(), config.dropout_rates.end(),
                  [](double p) { return p > 0.0; });

  Network best = net;
  std::size_t best_epoch = 0;
  double best_loss = INFINITY;
  double best_f1 = -1.0;
  std::size_t stale = 0;
  std::vector<EpochRecord> history;
  Trace trace;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      std::size_t end = std::min(order.size(), start + config.batch_size);
      std::fill(gradient.begin(), gradient.end(), 0.0);
      double batch_loss = 0.0;
      const double scale = 1.0 / static_cast<double>(end - start);
      for (std::size_t k = start; k < end; ++k) {
        std::size_t idx = order[k];
        if (use_dropout) {
          for (std::size_t l = 0; l < masks.size(); ++l) {
            double p = config.dropout_rates[l];
            for (auto& mk : masks[l]) mk = rng.bernoulli(p) ? 0.0 : 1.0 / (1.0 - p);
          }
        }
        const auto* mask_ptr = use_dropout ? &masks : nullptr;
        double z = forward(net.layers(), xs_train[idx], trace, mask_ptr);
        bool y = train[idx].non_formalistic;
        batch_loss += loss.value(z, y);
        backward(net.layers(), trace, mask_ptr, loss.derivative(z, y), scale,
                 gradient);
      }
      if (!std::isfinite(batch_loss)) {
        throw DivergenceError(fmt::format(
            "non-finite training loss at epoch {}, batch starting at {}", epoch,
            start));
      }
      ++step;
      if (config.optimizer == OptimizerKind::kAdam) {
        const double b1 = config.adam_beta1, b2 = config.adam_beta2;
        const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
        for (std::size_t k = 0; k < n_params; ++k) {
          m[k] = b1 * m[k] + (1.0 - b1) * gradient[k];
          v[k] = b2 * v[k] + (1.0 - b2) * gradient[k] * gradient[k];
          double mh = m[k] / c1;
          double vh = v[k] / c2;
          net.parameter(k) -=
              config.learning_rate * mh / (std::sqrt(vh) + config.adam_epsilon);
        }
      } else {
        for (std::size_t k = 0; k < n_params; ++k) {
          net.parameter(k) -= config.learning_rate * gradient[k];
        }
      }
    }

    auto tr = evaluate(net, loss, xs_train, train);
    auto va = evaluate(net, loss, xs_val, validation);
    if (!std::isfinite(tr.loss) || !std::isfinite(va.loss)) {
      throw DivergenceError(
          fmt::format("non-finite loss after epoch {} (train {}, validation {})",
                      epoch, tr.loss, va.loss));
    }
    history.push_back({epoch, tr.loss, va.loss, va.macro_f1});

    bool improved = config.monitor == EarlyStopMonitor::kValidationLoss
                        ? va.loss < best_loss
                        : va.macro_f1 > best_f1;
    if (improved) {
      best_loss = va.loss;
      best_f1 = va.macro_f1;
      best = net;
      best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.early_stopping_patience) {
      break;
    }
  }

  MlpModel model(std::move(best), scaler, config, loss);
  model.set_history(std::move(history), best_epoch);
  return model;
}

GradientCheckResult gradient_check(const MlpModel& model,
                                   const LabeledVector& sample, double epsilon) {
  GradientCheckResult r;
  auto x = model.scaler().apply(sample.x);
  const Network& net = model.network();
  const Loss& loss = model.loss();
  net.loss_and_gradient(x, sample.non_formalistic, loss, r.analytic);

  Network probe = net;
  r.numeric.resize(r.analytic.size());
  for (std::size_t k = 0; k < r.analytic.size(); ++k) {
    const double original = probe.parameter(k);
    probe.parameter(k) = original + epsilon;
    double up = loss.value(probe.logit(x), sample.non_formalistic);
    probe.parameter(k) = original - epsilon;
    double down = loss.value(probe.logit(x), sample.non_formalistic);
    probe.parameter(k) = original;
    r.numeric[k] = (up - down) / (2.0 * epsilon);

    double a = r.analytic[k], n = r.numeric[k];
    double denom = std::max({std::abs(a), std::abs(n), 1e-6});
    double err = std::abs(a - n) / denom;
    if (err > r.max_relative_error) {
      r.max_relative_error = err;
      r.worst_parameter = k;
    }
  }
  return r;
}

void write_model(std::ostream& out, const MlpModel& model) {
  const auto& cfg = model.config();
  ordered_json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = "formalism-mlp";
  j["topology"] = model.network().topology();
  j["hidden_activation"] = "relu";
  j["output_activation"] = "logistic";
  j["positive_class"] = "non_formalistic";
  j["decision_threshold"] = 0.5;
  auto names = ordered_json::array();
  for (auto n : feature_names()) names.push_back(n);
  j["feature_names"] = std::move(names);
  j["byte_order"] = "big-endian hex of IEEE-754 binary64";

  auto layers = ordered_json::array();
  for (const auto& l : model.network().layers()) {
    ordered_json lj;
    lj["inputs"] = l.inputs;
    lj["outputs"] = l.outputs;
    lj["weights"] = hex_array(l.weights);
    lj["biases"] = hex_array(l.biases);
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);

  ordered_json scaler;
  scaler["kind"] = "standardize";
  scaler["mean"] = hex_array(model.scaler().mean());
  scaler["scale"] = hex_array(model.scaler().scale());
  j["scaler"] = std::move(scaler);

  ordered_json c;
  c["hidden_sizes"] = cfg.hidden_sizes;
  c["dropout_rates"] = hex_array(cfg.dropout_rates);
  c["learning_rate"] = hex(cfg.learning_rate);
  c["batch_size"] = cfg.batch_size;
  c["early_stopping_patience"] = cfg.early_stopping_patience;
  c["max_epochs"] = cfg.max_epochs;
  c["loss"] = to_string(cfg.loss);
  c["optimizer"] = cfg.optimizer == OptimizerKind::kAdam ? "adam" : "sgd";
  c["monitor"] = cfg.monitor == EarlyStopMonitor::kValidationLoss
                     ? "validation_loss"
                     : "validation_macro_f1";
  c["gamma_pos"] = hex(cfg.gamma_pos);
  c["gamma_neg"] = hex(cfg.gamma_neg);
  c["asym_margin"] = hex(cfg.asym_margin);
  c["adam_beta1"] = hex(cfg.adam_beta1);
  c["adam_beta2"] = hex(cfg.adam_beta2);
  c["adam_epsilon"] = hex(cfg.adam_epsilon);
  j["config"] = std::move(c);
  j["seed"] = cfg.seed;
  j["loss_pos_weight"] = hex(model.loss().pos_weight);

  auto hist = ordered_json::array();
  for (const auto& e : model.history()) {
    ordered_json ej;
    ej["epoch"] = e.epoch;
    ej["train_loss"] = e.train_loss;
    ej["validation_loss"] = e.validation_loss;
    ej["validation_macro_f1"] = e.validation_macro_f1;
    hist.push_back(std::move(ej));
  }
  j["history"] = std::move(hist);
  j["best_epoch"] = model.best_epoch();
  out << j.dump(1) << '\n';
}

MlpModel read_model(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("model: malformed JSON: {}", e.what()));
  }
  try {
    if (j.at("format_version").get<int>() != kModelFormatVersion ||
        j.at("kind").get<std::string>() != "formalism-mlp") {
      throw ValidationError("model: unsupported format");
    }
    auto topology = j.at("topology").get<std::vector<std::size_t>>();
    if (topology.empty() || topology.front() != kNumFeatures) {
      throw ValidationError("model: input size must match the feature vector");
    }
    Network net(topology);
    const auto& layers = j.at("layers");
    if (layers.size() != net.layers().size()) {
      throw ValidationError("model: layer count does not match topology");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
      auto w = unhex_array(layers[l].at("weights"));
      auto b = unhex_array(layers[l].at("biases"));
      auto& dst = net.layers()[l];
      if (w.size() != dst.weights.size() || b.size() != dst.biases.size()) {
        throw ValidationError("model: parameter count does not match topology");
      }
      dst.weights = std::move(w);
      dst.biases = std::move(b);
    }
    auto mean = unhex_array(j.at("scaler").at("mean"));
    auto scale = unhex_array(j.at("scaler").at("scale"));
    if (mean.size() != kNumFeatures || scale.size() != kNumFeatures) {
      throw ValidationError("model: scaler size mismatch");
    }
    std::array<double, kNumFeatures> ma{}, sa{};
    std::copy(mean.begin(), mean.end(), ma.begin());
    std::copy(scale.begin(), scale.end(), sa.begin());

    const auto& c = j.at("config");
    MlpConfig cfg;
    cfg.hidden_sizes = c.at("hidden_sizes").get<std::vector<std::size_t>>();
    cfg.dropout_rates = unhex_array(c.at("dropout_rates"));
    cfg.learning_rate = unhex(c.at("learning_rate"));
    cfg.batch_size = c.at("batch_size").get<std::size_t>();
    cfg.early_stopping_patience = c.at("early_stopping_patience").get<std::size_t>();
    cfg.max_epochs = c.at("max_epochs").get<std::size_t>();
    auto loss_kind = parse_loss_kind(c.at("loss").get<std::string>());
    if (!loss_kind) throw ValidationError("model: unknown loss");
    cfg.loss = *loss_kind;
    cfg.optimizer = c.at("optimizer").get<std::string>() == "sgd"
                        ? OptimizerKind::kSgd
                        : OptimizerKind::kAdam;
    cfg.monitor = c.at("monitor").get<std::string>() == "validation_macro_f1"
                      ? EarlyStopMonitor::kValidationMacroF1
                      : EarlyStopMonitor::kValidationLoss;
    cfg.gamma_pos = unhex(c.at("gamma_pos"));
    cfg.gamma_neg = unhex(c.at("gamma_neg"));
    cfg.asym_margin = unhex(c.at("asym_margin"));
    cfg.adam_beta1 = unhex(c.at("adam_beta1"));
    cfg.adam_beta2 = unhex(c.at("adam_beta2"));
    cfg.adam_epsilon = unhex(c.at("adam_epsilon"));
    cfg.seed = j.at("seed").get<std::uint64_t>();

    Loss loss = make_loss(cfg, unhex(j.at("loss_pos_weight")));
    MlpModel model(std::move(net), Scaler(ma, sa), cfg, loss);

    std::vector<EpochRecord> history;
    for (const auto& e : j.at("history")) {
      history.push_back({e.at("epoch").get<std::size_t>(),
                         e.at("train_loss").get<double>(),
                         e.at("validation_loss").get<double>(),
                         e.at("validation_macro_f1").get<double>()});
    }
    model.set_history(std::move(history), j.at("best_epoch").get<std::size_t>());
    return model;
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("model: {}", e.what()));
  }
}

void save_model(const std::filesystem::path& path, const MlpModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError(fmt::format("cannot write model '{}'", path.string()));
  }
  write_model(out, model);
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError(fmt::format("cannot open model '{}'", path.string()));
  }
  return read_model(in);
}

}  // namespace formalism
