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

// Exact Shapley attribution by enumerating every coalition.
//
// For a value function v over feature subsets,
//
//   phi_i = sum over S not containing i of
//           |S|! (n - |S| - 1)! / n! * (v(S + i) - v(S)).
//
// For the MLP, v(S) is the predicted probability on a hybrid input that takes
// features in S from the instance and the rest from a reference point, with
// the model's scaler applied inside v, so attributions live in raw feature
// units.
//
// shapley_values() evaluates all 2^n coalitions in parallel and then sums in
// a fixed order, so its result does not depend on the thread count.
// shapley_values_serial() is the direct per-feature enumeration kept as a
// reference.

#ifndef FORMALISM_ATTRIBUTION_HPP_
#define FORMALISM_ATTRIBUTION_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "formalism/features.hpp"
#include "formalism/mlp.hpp"

namespace formalism {

// Value of a coalition given as a bitmask over features. Must be safe to
// call concurrently.
using CoalitionValue = std::function<double(std::uint32_t)>;

inline constexpr std::size_t kMaxShapleyFeatures = 24;

std::vector<double> shapley_values(std::size_t num_features,
                                   const CoalitionValue& value);
std::vector<double> shapley_values_serial(std::size_t num_features,
                                          const CoalitionValue& value);

// Shapley values from a precomputed table of all 2^n coalition values.
std::vector<double> shapley_from_table(std::size_t num_features,
                                       std::span<const double> table);

struct Attribution {
  std::array<double, kNumFeatures> phi{};
  double base_value = 0.0;      // f(reference)
  double instance_output = 0.0; // f(instance)
};

Attribution exact_shapley(const MlpModel& model, const FeatureVector& instance,
                          const FeatureVector& reference);
Attribution exact_shapley_serial(const MlpModel& model,
                                 const FeatureVector& instance,
                                 const FeatureVector& reference);

// Component-wise mean; the default reference point.
FeatureVector mean_features(std::span<const FeatureVector> vectors);

struct FeatureImportance {
  std::size_t feature = 0;
  double mean_abs_phi = 0.0;
  double mean_phi = 0.0;
  // Pearson correlation between the feature's value and its phi across
  // instances; 0 when either side is constant.
  double value_correlation = 0.0;
  int sign = 0;  // sign of value_correlation
};

struct ShapSummary {
  std::vector<FeatureImportance> ranking;  // by mean |phi|, descending
  std::vector<Attribution> attributions;   // one per dataset row
};

// Throws ValidationError on an empty dataset. Instances are attributed in
// parallel.
ShapSummary shap_summary(const MlpModel& model,
                         std::span<const FeatureVector> dataset,
                         const FeatureVector& reference);

}  // namespace formalism

#endif  // FORMALISM_ATTRIBUTION_HPP_
