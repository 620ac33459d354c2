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

// Corpus-level descriptive statistics: argument distributions, holistic
// label counts, per-year trend series and argument shares. Every function is
// pure over (corpus, filter), so gold and pipeline-predicted corpora go
// through the same code.

#ifndef FORMALISM_ANALYSIS_HPP_
#define FORMALISM_ANALYSIS_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "formalism/argument_type.hpp"
#include "formalism/corpus.hpp"

namespace formalism {

// Inclusive range of decision years; an absent bound is open.
struct YearRange {
  std::optional<int> from;
  std::optional<int> to;

  bool contains(int year) const {
    return (!from || year >= *from) && (!to || year <= *to);
  }
};

Corpus filter_by_year(const Corpus& corpus, const YearRange& range);

struct TypeCounts {
  // Paragraphs carrying the type, and documents with at least one.
  std::array<std::size_t, kNumArgumentTypes> frequency{};
  std::array<std::size_t, kNumArgumentTypes> existence{};
  std::size_t n_documents = 0;

  std::size_t n_arguments() const;
};

struct DistributionReport {
  TypeCounts sc;
  TypeCounts sac;
  TypeCounts overall;

  const TypeCounts& court(Court c) const { return c == Court::SC ? sc : sac; }
};

DistributionReport argument_distribution(const Corpus& corpus,
                                         const std::optional<YearRange>& range = {});

struct HolisticRow {
  std::size_t formalistic = 0;
  std::size_t non_formalistic = 0;

  std::size_t total() const { return formalistic + non_formalistic; }
  // Fractions in [0,1]; 0 for an empty row.
  double formalistic_share() const;
  double non_formalistic_share() const;
};

struct HolisticReport {
  HolisticRow sc;
  HolisticRow sac;
  HolisticRow overall;
};

// Throws ValidationError listing unlabeled documents.
HolisticReport holistic_distribution(const Corpus& corpus);

// One bucket of the trend series for one scope (a court, or both).
// Undefined values are nullopt, never silently zero.
struct TrendPoint {
  int bucket_start = 0;
  int bucket_end = 0;  // inclusive
  std::size_t n_documents = 0;
  std::size_t formalistic_arguments = 0;
  std::size_t non_formalistic_arguments = 0;
  std::size_t non_formalistic_documents = 0;
  std::size_t zero_nf_documents = 0;

  // (a) non-formalistic / formalistic arguments; undefined with no
  // formalistic arguments.
  std::optional<double> nf_to_f_ratio;
  // (b) mean non-formalistic arguments per decision.
  std::optional<double> mean_nf_arguments;
  // (c) share of non-formalistic decisions.
  std::optional<double> nf_decision_share;
  // (d) share of decisions without non-formalistic arguments.
  std::optional<double> zero_nf_share;
};

enum class TrendScope : std::uint8_t { kSC, kSAC, kAll };

std::string_view to_string(TrendScope s);

struct TrendSeries {
  int bucket_years = 1;
  // Contiguous buckets from the first to the last decision year, per scope.
  std::vector<TrendPoint> sc;
  std::vector<TrendPoint> sac;
  std::vector<TrendPoint> all;

  const std::vector<TrendPoint>& scope(TrendScope s) const;
};

// Throws ValidationError on unlabeled documents or bucket_years < 1.
// Buckets start at the earliest decision year in the corpus.
TrendSeries temporal_trends(const Corpus& corpus, int bucket_years = 1);

// Centered moving average of width `width` (odd) over a series; each window
// averages its defined values and is undefined when it has none.
std::vector<std::optional<double>> rolling_mean(
    const std::vector<std::optional<double>>& series, std::size_t width = 3);

struct PeriodComparison {
  std::optional<double> first;   // non-formalistic decision share
  std::optional<double> second;
  // (second - first) / first; undefined when first is 0 or missing.
  std::optional<double> relative_change;
};

PeriodComparison compare_periods(const Corpus& corpus, std::optional<Court> court,
                                 const YearRange& first, const YearRange& second);

struct ShareReport {
  std::array<std::size_t, kNumArgumentTypes> counts{};
  std::size_t total = 0;
  std::array<double, kNumArgumentTypes> percent{};  // 100 * count / total
};

// Throws ValidationError when the filtered corpus has no arguments.
ShareReport share_report(const Corpus& corpus,
                         const std::optional<YearRange>& range = {});

// Writes distribution.csv, holistic.csv, trends.csv and shares.csv into
// `dir`, creating it if needed. The year range filters every table;
// shares.csv also carries the unfiltered rows.
void write_report(const Corpus& corpus, const YearRange& range,
                  const std::filesystem::path& dir, int bucket_years = 1);

void write_distribution_csv(std::ostream& out, const DistributionReport& r);
void write_holistic_csv(std::ostream& out, const HolisticReport& r);
void write_trends_csv(std::ostream& out, const TrendSeries& t);
void write_shares_csv(std::ostream& out, const ShareReport& unfiltered,
                      const std::optional<ShareReport>& filtered,
                      const YearRange& range);

}  // namespace formalism

#endif  // FORMALISM_ANALYSIS_HPP_
