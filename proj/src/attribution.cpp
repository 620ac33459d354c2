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

#include "formalism/attribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <omp.h>

#include "formalism/errors.hpp"

namespace formalism {
namespace {

void check_size(std::size_t n) {
  if (n == 0 || n > kMaxShapleyFeatures) {
    throw ValidationError("shapley: feature count out of range");
  }
}

// weights[s] = s! (n - s - 1)! / n!, via lgamma to stay finite for large n.
std::vector<double> coalition_weights(std::size_t n) {
  std::vector<double> w(n);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::size_t s = 0; s < n; ++s) {
    w[s] = std::exp(std::lgamma(static_cast<double>(s) + 1.0) +
                    std::lgamma(static_cast<double>(n - s)) - log_n_fact);
  }
  return w;
}

std::array<double, kNumFeatures> hybrid(const FeatureVector& instance,
                                        const FeatureVector& reference,
                                        std::uint32_t mask) {
  std::array<double, kNumFeatures> x{};
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    x[j] = (mask >> j) & 1u ? instance[j] : reference[j];
  }
  return x;
}

CoalitionValue model_value(const MlpModel& model, const FeatureVector& instance,
                           const FeatureVector& reference) {
  return [&model, &instance, &reference](std::uint32_t mask) {
    FeatureVector v;
    v.values = hybrid(instance, reference, mask);
    return model.predict(v);
  };
}

Attribution to_attribution(const std::vector<double>& phi, double base,
                           double output) {
  Attribution a;
  std::copy(phi.begin(), phi.end(), a.phi.begin());
  a.base_value = base;
  a.instance_output = output;
  return a;
}

std::vector<double> evaluate_table(std::size_t n, const CoalitionValue& value,
                                   bool parallel) {
  const auto count = static_cast<std::int64_t>(1) << n;
  std::vector<double> table(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t mask = 0; mask < count; ++mask) {
    table[static_cast<std::size_t>(mask)] = value(static_cast<std::uint32_t>(mask));
  }
  return table;
}

}  // namespace

std::vector<double> shapley_from_table(std::size_t n,
                                       std::span<const double> table) {
  check_size(n);
  if (table.size() != (std::size_t{1} << n)) {
    throw ValidationError("shapley: coalition table has the wrong size");
  }
  const auto weights = coalition_weights(n);
  std::vector<double> phi(n, 0.0);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    for (std::uint32_t s = 0; s <= full; ++s) {
      if (s & bit) continue;
      phi[i] += weights[static_cast<std::size_t>(std::popcount(s))] *
                (table[s | bit] - table[s]);
    }
  }
  return phi;
}

std::vector<double> shapley_values(std::size_t n, const CoalitionValue& value) {
  check_size(n);
  auto table = evaluate_table(n, value, !omp_in_parallel());
  return shapley_from_table(n, table);
}

std::vector<double> shapley_values_serial(std::size_t n,
                                          const CoalitionValue& value) {
  check_size(n);
  // Direct definition: n! weighting through factorials of the subset size,
  // value function called on demand for both sides of every marginal.
  std::vector<double> phi(n, 0.0);
  auto factorial = [](std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f;
  };
  const double n_fact = factorial(n);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    for (std::uint32_t s = 0; s <= full; ++s) {
      if (s & bit) continue;
      auto size = static_cast<std::size_t>(std::popcount(s));
      double w = factorial(size) * factorial(n - size - 1) / n_fact;
      phi[i] += w * (value(s | bit) - value(s));
    }
  }
  return phi;
}

Attribution exact_shapley(const MlpModel& model, const FeatureVector& instance,
                          const FeatureVector& reference) {
  auto value = model_value(model, instance, reference);
  auto table = evaluate_table(kNumFeatures, value, !omp_in_parallel());
  auto phi = shapley_from_table(kNumFeatures, table);
  const std::uint32_t full = (std::uint32_t{1} << kNumFeatures) - 1;
  return to_attribution(phi, table[0], table[full]);
}

Attribution exact_shapley_serial(const MlpModel& model,
                                 const FeatureVector& instance,
                                 const FeatureVector& reference) {
  auto value = model_value(model, instance, reference);
  auto phi = shapley_values_serial(kNumFeatures, value);
  return to_attribution(phi, model.predict(reference), model.predict(instance));
}

FeatureVector mean_features(std::span<const FeatureVector> vectors) {
  FeatureVector m;
  if (vectors.empty()) return m;
  for (const auto& v : vectors) {
    for (std::size_t j = 0; j < kNumFeatures; ++j) m[j] += v[j];
  }
  for (auto& x : m.values) x /= static_cast<double>(vectors.size());
  return m;
}

ShapSummary shap_summary(const MlpModel& model,
                         std::span<const FeatureVector> dataset,
                         const FeatureVector& reference) {
  if (dataset.empty()) throw ValidationError("shap_summary: empty dataset");
  ShapSummary summary;
  summary.attributions.resize(dataset.size());
  const auto n = static_cast<std::int64_t>(dataset.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < n; ++r) {
    auto idx = static_cast<std::size_t>(r);
    summary.attributions[idx] = exact_shapley(model, dataset[idx], reference);
  }

  const double count = static_cast<double>(dataset.size());
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    FeatureImportance imp;
    imp.feature = j;
    double sum_x = 0, sum_p = 0;
    for (std::size_t r = 0; r < dataset.size(); ++r) {
      double p = summary.attributions[r].phi[j];
      imp.mean_abs_phi += std::abs(p);
      sum_p += p;
      sum_x += dataset[r][j];
    }
    imp.mean_abs_phi /= count;
    imp.mean_phi = sum_p / count;
    const double mx = sum_x / count, mp = sum_p / count;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t r = 0; r < dataset.size(); ++r) {
      double dx = dataset[r][j] - mx;
      double dp = summary.attributions[r].phi[j] - mp;
      sxy += dx * dp;
      sxx += dx * dx;
      syy += dp * dp;
    }
    if (sxx > 0 && syy > 0) imp.value_correlation = sxy / std::sqrt(sxx * syy);
    imp.sign = imp.value_correlation > 0 ? 1 : (imp.value_correlation < 0 ? -1 : 0);
    summary.ranking.push_back(imp);
  }
  std::stable_sort(summary.ranking.begin(), summary.ranking.end(),
                   [](const FeatureImportance& a, const FeatureImportance& b) {
                     return a.mean_abs_phi > b.mean_abs_phi;
                   });
  return summary;
}

}  // namespace formalism
