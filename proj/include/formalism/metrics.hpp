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

// Evaluation metrics.
//
// Binary tasks (argument presence, holistic label) report per-class
// precision/recall/F1 averaged over both classes. The multilabel task treats
// every label as an independent binary problem and reports
//
//   F1+ = 2tp / (2tp + fp + fn)      F1- = 2tn / (2tn + fp + fn)
//   macro_l = (F1+ + F1-) / 2        macro_all = mean of macro_l over the
//                                    whole declared inventory
//
// Every 0/0 term is 0. Values are fractions in [0, 1]; use percent() to
// present them.

#ifndef FORMALISM_METRICS_HPP_
#define FORMALISM_METRICS_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "formalism/argument_type.hpp"

namespace formalism {

struct BinaryCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const BinaryCounts&, const BinaryCounts&) = default;
};

// a / b with 0/0 (and x/0) defined as 0.
double safe_ratio(double numerator, double denominator);

double f1_positive(const BinaryCounts& c);
double f1_negative(const BinaryCounts& c);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct BinaryReport {
  ClassScores positive;
  ClassScores negative;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  BinaryCounts counts;
};

// Throws ValidationError on length mismatch or empty input.
BinaryReport binary_macro_prf(std::span<const bool> gold,
                              std::span<const bool> pred);

struct LabelMetrics {
  ArgumentType label;
  double f1_pos = 0.0;
  double f1_neg = 0.0;
  double macro_f1 = 0.0;
  BinaryCounts counts;
};

struct EvaluationReport {
  std::vector<LabelMetrics> per_label;
  double mean_f1_pos = 0.0;
  double mean_f1_neg = 0.0;
  double macro_all = 0.0;
};

using LabelCounts = std::array<BinaryCounts, kNumArgumentTypes>;

// Per-label confusion counts over all 8 codes. The parallel kernel and the
// serial reference must agree exactly.
LabelCounts multilabel_counts(std::span<const ArgumentSet> gold,
                              std::span<const ArgumentSet> pred);
LabelCounts multilabel_counts_serial(std::span<const ArgumentSet> gold,
                                     std::span<const ArgumentSet> pred);

// Throws ValidationError on length mismatch or when a set contains a label
// outside the inventory.
EvaluationReport multilabel_report(std::span<const ArgumentSet> gold,
                                   std::span<const ArgumentSet> pred,
                                   std::span<const ArgumentType> inventory);
EvaluationReport multilabel_report(std::span<const ArgumentSet> gold,
                                   std::span<const ArgumentSet> pred);

// Fraction -> percent rounded half-up to one decimal, for presentation only.
double percent(double fraction);

// Percent view of a binary report. Per-class F1 is recomputed from the
// displayed (one-decimal) precision and recall, so a printed row is
// self-consistent: majority on 17/12 shows 29.3 / 50.0 / 36.9, whereas
// percent(macro_f1) would show 37.0.
struct PresentedClass {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct PresentedBinary {
  PresentedClass positive;
  PresentedClass negative;
  PresentedClass macro;
};

PresentedBinary present(const BinaryReport& report);

}  // namespace formalism

#endif  // FORMALISM_METRICS_HPP_
