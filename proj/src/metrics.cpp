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

#include "formalism/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "formalism/errors.hpp"

namespace formalism {
namespace {

void check_lengths(std::size_t gold, std::size_t pred) {
  if (gold != pred) {
    throw ValidationError(fmt::format(
        "gold and predictions differ in length ({} vs {})", gold, pred));
  }
}

// Below this many instances the thread fork costs more than the count.
constexpr std::size_t kParallelThreshold = 4096;

}  // namespace

double safe_ratio(double numerator, double denominator) {
  return denominator == 0.0 ? 0.0 : numerator / denominator;
}

double f1_positive(const BinaryCounts& c) {
  auto tp = static_cast<double>(c.tp);
  return safe_ratio(2.0 * tp, 2.0 * tp + static_cast<double>(c.fp + c.fn));
}

double f1_negative(const BinaryCounts& c) {
  auto tn = static_cast<double>(c.tn);
  return safe_ratio(2.0 * tn, 2.0 * tn + static_cast<double>(c.fp + c.fn));
}

BinaryReport binary_macro_prf(std::span<const bool> gold,
                              std::span<const bool> pred) {
  check_lengths(gold.size(), pred.size());
  if (gold.empty()) throw ValidationError("binary_macro_prf: empty input");
  BinaryReport r;
  auto& c = r.counts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] && pred[i]) {
      ++c.tp;
    } else if (!gold[i] && pred[i]) {
      ++c.fp;
    } else if (gold[i] && !pred[i]) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  auto tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  auto fn = static_cast<double>(c.fn), tn = static_cast<double>(c.tn);
  r.positive.precision = safe_ratio(tp, tp + fp);
  r.positive.recall = safe_ratio(tp, tp + fn);
  r.positive.f1 = safe_ratio(2.0 * tp, 2.0 * tp + fp + fn);
  // The negative class swaps the roles of fp and fn.
  r.negative.precision = safe_ratio(tn, tn + fn);
  r.negative.recall = safe_ratio(tn, tn + fp);
  r.negative.f1 = safe_ratio(2.0 * tn, 2.0 * tn + fp + fn);
  r.macro_precision = (r.positive.precision + r.negative.precision) / 2.0;
  r.macro_recall = (r.positive.recall + r.negative.recall) / 2.0;
  r.macro_f1 = (r.positive.f1 + r.negative.f1) / 2.0;
  return r;
}

LabelCounts multilabel_counts_serial(std::span<const ArgumentSet> gold,
                                     std::span<const ArgumentSet> pred) {
  check_lengths(gold.size(), pred.size());
  LabelCounts counts{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (auto t : kAllArgumentTypes) {
      bool g = gold[i].contains(t);
      bool p = pred[i].contains(t);
      auto& c = counts[index_of(t)];
      if (g && p) {
        ++c.tp;
      } else if (p) {
        ++c.fp;
      } else if (g) {
        ++c.fn;
      } else {
        ++c.tn;
      }
    }
  }
  return counts;
}

LabelCounts multilabel_counts(std::span<const ArgumentSet> gold,
                              std::span<const ArgumentSet> pred) {
  check_lengths(gold.size(), pred.size());
  const auto n = static_cast<std::int64_t>(gold.size());
  // Per label: tp, fp, fn counted directly; tn = n - the rest.
  std::uint64_t acc[3 * kNumArgumentTypes] = {};
#pragma omp parallel for schedule(static) reduction(+ : acc[:3 * kNumArgumentTypes]) \
    if (gold.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto g = gold[static_cast<std::size_t>(i)].bits();
    const auto p = pred[static_cast<std::size_t>(i)].bits();
    for (std::size_t l = 0; l < kNumArgumentTypes; ++l) {
      const unsigned gb = (g >> l) & 1u;
      const unsigned pb = (p >> l) & 1u;
      acc[3 * l] += gb & pb;
      acc[3 * l + 1] += pb & ~gb & 1u;
      acc[3 * l + 2] += gb & ~pb & 1u;
    }
  }
  LabelCounts counts{};
  for (std::size_t l = 0; l < kNumArgumentTypes; ++l) {
    auto& c = counts[l];
    c.tp = acc[3 * l];
    c.fp = acc[3 * l + 1];
    c.fn = acc[3 * l + 2];
    c.tn = static_cast<std::uint64_t>(n) - c.tp - c.fp - c.fn;
  }
  return counts;
}

EvaluationReport multilabel_report(std::span<const ArgumentSet> gold,
                                   std::span<const ArgumentSet> pred,
                                   std::span<const ArgumentType> inventory) {
  check_lengths(gold.size(), pred.size());
  ArgumentSet allowed;
  for (auto t : inventory) allowed.insert(t);
  auto check = [&](std::span<const ArgumentSet> sets, const char* which) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if ((sets[i].bits() & ~allowed.bits()) != 0) {
        throw ValidationError(fmt::format(
            "{} instance {} has a label outside the inventory", which, i));
      }
    }
  };
  check(gold, "gold");
  check(pred, "predicted");

  auto counts = multilabel_counts(gold, pred);
  EvaluationReport report;
  for (auto t : inventory) {
    LabelMetrics m;
    m.label = t;
    m.counts = counts[index_of(t)];
    m.f1_pos = f1_positive(m.counts);
    m.f1_neg = f1_negative(m.counts);
    m.macro_f1 = (m.f1_pos + m.f1_neg) / 2.0;
    report.per_label.push_back(m);
  }
  if (!report.per_label.empty()) {
    auto k = static_cast<double>(report.per_label.size());
    for (const auto& m : report.per_label) {
      report.mean_f1_pos += m.f1_pos;
      report.mean_f1_neg += m.f1_neg;
      report.macro_all += m.macro_f1;
    }
    report.mean_f1_pos /= k;
    report.mean_f1_neg /= k;
    report.macro_all /= k;
  }
  return report;
}

EvaluationReport multilabel_report(std::span<const ArgumentSet> gold,
                                   std::span<const ArgumentSet> pred) {
  return multilabel_report(gold, pred, kAllArgumentTypes);
}

double percent(double fraction) {
  // The 1e-9 nudge makes exact decimal halves (x.x5 stored as x.x4999...)
  // round up.
  return std::floor(fraction * 1000.0 + 0.5 + 1e-9) / 10.0;
}

namespace {

PresentedClass present_class(const ClassScores& c) {
  PresentedClass out;
  out.precision = percent(c.precision);
  out.recall = percent(c.recall);
  double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

}  // namespace

PresentedBinary present(const BinaryReport& report) {
  PresentedBinary out;
  out.positive = present_class(report.positive);
  out.negative = present_class(report.negative);
  out.macro.precision = percent(report.macro_precision);
  out.macro.recall = percent(report.macro_recall);
  out.macro.f1 = percent((out.positive.f1 + out.negative.f1) / 200.0);
  out.positive.f1 = percent(out.positive.f1 / 100.0);
  out.negative.f1 = percent(out.negative.f1 / 100.0);
  return out;
}

}  // namespace formalism
