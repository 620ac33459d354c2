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

#include "formalism/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "formalism/metrics.hpp"

namespace formalism {
namespace {

void require_labels(const Corpus& corpus) {
  std::vector<std::string> missing;
  for (const auto& d : corpus.documents) {
    if (!d.holistic_label) missing.push_back(d.doc_id);
  }
  if (!missing.empty()) {
    throw ValidationError(fmt::format("unlabeled documents: {}",
                                      fmt::join(missing, ", ")));
  }
}

void tally(TypeCounts& c, const Document& d) {
  ++c.n_documents;
  ArgumentSet seen;
  for (const auto& p : d.paragraphs) {
    for (auto t : kAllArgumentTypes) {
      if (p.argument_types.contains(t)) {
        ++c.frequency[index_of(t)];
        seen.insert(t);
      }
    }
  }
  for (auto t : kAllArgumentTypes) {
    if (seen.contains(t)) ++c.existence[index_of(t)];
  }
}

std::string cell(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string("NA");
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Corpus filter_by_year(const Corpus& corpus, const YearRange& range) {
  Corpus out;
  out.provenance = corpus.provenance;
  for (const auto& d : corpus.documents) {
    if (range.contains(d.year())) out.documents.push_back(d);
  }
  return out;
}

std::size_t TypeCounts::n_arguments() const {
  std::size_t n = 0;
  for (auto f : frequency) n += f;
  return n;
}

DistributionReport argument_distribution(const Corpus& corpus,
                                         const std::optional<YearRange>& range) {
  DistributionReport r;
  for (const auto& d : corpus.documents) {
    if (range && !range->contains(d.year())) continue;
    tally(d.court == Court::SC ? r.sc : r.sac, d);
    tally(r.overall, d);
  }
  return r;
}

double HolisticRow::formalistic_share() const {
  return total() == 0 ? 0.0
                      : static_cast<double>(formalistic) / static_cast<double>(total());
}

double HolisticRow::non_formalistic_share() const {
  return total() == 0 ? 0.0
                      : static_cast<double>(non_formalistic) /
                            static_cast<double>(total());
}

HolisticReport holistic_distribution(const Corpus& corpus) {
  require_labels(corpus);
  HolisticReport r;
  for (const auto& d : corpus.documents) {
    bool nf = *d.holistic_label == HolisticLabel::kNonFormalistic;
    auto& row = d.court == Court::SC ? r.sc : r.sac;
    (nf ? row.non_formalistic : row.formalistic) += 1;
    (nf ? r.overall.non_formalistic : r.overall.formalistic) += 1;
  }
  return r;
}

std::string_view to_string(TrendScope s) {
  switch (s) {
    case TrendScope::kSC: return "SC";
    case TrendScope::kSAC: return "SAC";
    case TrendScope::kAll: return "all";
  }
  return "all";
}

const std::vector<TrendPoint>& TrendSeries::scope(TrendScope s) const {
  switch (s) {
    case TrendScope::kSC: return sc;
    case TrendScope::kSAC: return sac;
    case TrendScope::kAll: return all;
  }
  return all;
}

TrendSeries temporal_trends(const Corpus& corpus, int bucket_years) {
  if (bucket_years < 1) throw ValidationError("bucket width must be at least 1 year");
  require_labels(corpus);
  TrendSeries t;
  t.bucket_years = bucket_years;
  if (corpus.documents.empty()) return t;
  int first = corpus.documents.front().year();
  int last = first;
  for (const auto& d : corpus.documents) {
    first = std::min(first, d.year());
    last = std::max(last, d.year());
  }
  const auto n_buckets = static_cast<std::size_t>((last - first) / bucket_years + 1);
  auto init = [&](std::vector<TrendPoint>& v) {
    v.resize(n_buckets);
    for (std::size_t b = 0; b < n_buckets; ++b) {
      v[b].bucket_start = first + static_cast<int>(b) * bucket_years;
      v[b].bucket_end = v[b].bucket_start + bucket_years - 1;
    }
  };
  init(t.sc);
  init(t.sac);
  init(t.all);

  for (const auto& d : corpus.documents) {
    auto b = static_cast<std::size_t>((d.year() - first) / bucket_years);
    std::size_t f = 0;
    std::size_t nf = 0;
    for (const auto& p : d.paragraphs) {
      f += p.argument_types.count(ArgumentGroup::kFormalistic);
      nf += p.argument_types.count(ArgumentGroup::kNonFormalistic);
    }
    bool nf_doc = *d.holistic_label == HolisticLabel::kNonFormalistic;
    for (auto* series : {d.court == Court::SC ? &t.sc : &t.sac, &t.all}) {
      auto& pt = (*series)[b];
      ++pt.n_documents;
      pt.formalistic_arguments += f;
      pt.non_formalistic_arguments += nf;
      pt.non_formalistic_documents += nf_doc ? 1 : 0;
      pt.zero_nf_documents += nf == 0 ? 1 : 0;
    }
  }
  for (auto* series : {&t.sc, &t.sac, &t.all}) {
    for (auto& pt : *series) {
      pt.nf_to_f_ratio = ratio(pt.non_formalistic_arguments, pt.formalistic_arguments);
      pt.mean_nf_arguments = ratio(pt.non_formalistic_arguments, pt.n_documents);
      pt.nf_decision_share = ratio(pt.non_formalistic_documents, pt.n_documents);
      pt.zero_nf_share = ratio(pt.zero_nf_documents, pt.n_documents);
    }
  }
  return t;
}

std::vector<std::optional<double>> rolling_mean(
    const std::vector<std::optional<double>>& series, std::size_t width) {
  if (width == 0 || width % 2 == 0) {
    throw ValidationError("rolling window width must be odd");
  }
  const std::size_t half = width / 2;
  std::vector<std::optional<double>> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::size_t lo = i >= half ? i - half : 0;
    std::size_t hi = std::min(series.size() - 1, i + half);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (series[k]) {
        sum += *series[k];
        ++n;
      }
    }
    if (n > 0) out[i] = sum / static_cast<double>(n);
  }
  return out;
}

PeriodComparison compare_periods(const Corpus& corpus, std::optional<Court> court,
                                 const YearRange& first, const YearRange& second) {
  require_labels(corpus);
  auto share = [&](const YearRange& r) -> std::optional<double> {
    std::size_t n = 0;
    std::size_t nf = 0;
    for (const auto& d : corpus.documents) {
      if (court && d.court != *court) continue;
      if (!r.contains(d.year())) continue;
      ++n;
      nf += *d.holistic_label == HolisticLabel::kNonFormalistic ? 1 : 0;
    }
    return ratio(nf, n);
  };
  PeriodComparison c;
  c.first = share(first);
  c.second = share(second);
  if (c.first && c.second && *c.first > 0.0) {
    c.relative_change = (*c.second - *c.first) / *c.first;
  }
  return c;
}

ShareReport share_report(const Corpus& corpus, const std::optional<YearRange>& range) {
  auto dist = argument_distribution(corpus, range);
  ShareReport s;
  s.counts = dist.overall.frequency;
  s.total = dist.overall.n_arguments();
  if (s.total == 0) throw ValidationError("no arguments in the selected period");
  for (std::size_t i = 0; i < kNumArgumentTypes; ++i) {
    s.percent[i] = 100.0 * static_cast<double>(s.counts[i]) /
                   static_cast<double>(s.total);
  }
  return s;
}

void write_distribution_csv(std::ostream& out, const DistributionReport& r) {
  out << "scope,type,group,frequency,existence,n_documents\n";
  const std::pair<std::string_view, const TypeCounts*> scopes[] = {
      {"SC", &r.sc}, {"SAC", &r.sac}, {"all", &r.overall}};
  for (const auto& [name, c] : scopes) {
    for (auto t : kAllArgumentTypes) {
      out << fmt::format(
          "{},{},{},{},{},{}\n", name, code_of(t),
          group_of(t) == ArgumentGroup::kFormalistic ? "formalistic"
                                                     : "non_formalistic",
          c->frequency[index_of(t)], c->existence[index_of(t)], c->n_documents);
    }
  }
}

void write_holistic_csv(std::ostream& out, const HolisticReport& r) {
  out << "court,formalistic,non_formalistic,total,formalistic_pct,"
         "non_formalistic_pct\n";
  const std::pair<std::string_view, const HolisticRow*> rows[] = {
      {"SC", &r.sc}, {"SAC", &r.sac}, {"all", &r.overall}};
  for (const auto& [name, row] : rows) {
    out << fmt::format("{},{},{},{},{:.1f},{:.1f}\n", name, row->formalistic,
                       row->non_formalistic, row->total(),
                       percent(row->formalistic_share()),
                       percent(row->non_formalistic_share()));
  }
}

void write_trends_csv(std::ostream& out, const TrendSeries& t) {
  out << "scope,bucket_start,bucket_end,n_documents,formalistic_arguments,"
         "non_formalistic_arguments,nf_to_f_ratio,mean_nf_arguments,"
         "nf_decision_share,zero_nf_share,nf_to_f_ratio_roll3,"
         "mean_nf_arguments_roll3,nf_decision_share_roll3,zero_nf_share_roll3\n";
  for (auto scope : {TrendScope::kSC, TrendScope::kSAC, TrendScope::kAll}) {
    const auto& pts = t.scope(scope);
    auto column = [&](std::optional<double> TrendPoint::*field) {
      std::vector<std::optional<double>> v;
      v.reserve(pts.size());
      for (const auto& p : pts) v.push_back(p.*field);
      return rolling_mean(v, 3);
    };
    auto ra = column(&TrendPoint::nf_to_f_ratio);
    auto rb = column(&TrendPoint::mean_nf_arguments);
    auto rc = column(&TrendPoint::nf_decision_share);
    auto rd = column(&TrendPoint::zero_nf_share);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                         to_string(scope), p.bucket_start, p.bucket_end,
                         p.n_documents, p.formalistic_arguments,
                         p.non_formalistic_arguments, cell(p.nf_to_f_ratio),
                         cell(p.mean_nf_arguments), cell(p.nf_decision_share),
                         cell(p.zero_nf_share), cell(ra[i]), cell(rb[i]),
                         cell(rc[i]), cell(rd[i]));
    }
  }
}

void write_shares_csv(std::ostream& out, const ShareReport& unfiltered,
                      const std::optional<ShareReport>& filtered,
                      const YearRange& range) {
  out << "filter,from,to,type,count,total,percent,percent_1dp\n";
  auto bound = [](const std::optional<int>& y) {
    return y ? std::to_string(*y) : std::string();
  };
  auto rows = [&](std::string_view name, const ShareReport& s,
                  const std::string& from, const std::string& to) {
    for (auto t : kAllArgumentTypes) {
      auto i = index_of(t);
      out << fmt::format("{},{},{},{},{},{},{},{:.1f}\n", name, from, to,
                         code_of(t), s.counts[i], s.total, s.percent[i],
                         percent(s.percent[i] / 100.0));
    }
  };
  rows("unfiltered", unfiltered, "", "");
  if (filtered) rows("filtered", *filtered, bound(range.from), bound(range.to));
}

void write_report(const Corpus& corpus, const YearRange& range,
                  const std::filesystem::path& dir, int bucket_years) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) {
      throw ValidationError(fmt::format("cannot write '{}'", (dir / name).string()));
    }
    return f;
  };
  auto slice = filter_by_year(corpus, range);
  {
    auto f = open("distribution.csv");
    write_distribution_csv(f, argument_distribution(slice));
  }
  {
    auto f = open("holistic.csv");
    write_holistic_csv(f, holistic_distribution(slice));
  }
  {
    auto f = open("trends.csv");
    write_trends_csv(f, temporal_trends(slice, bucket_years));
  }
  {
    auto f = open("shares.csv");
    auto all = share_report(corpus);
    std::optional<ShareReport> filtered;
    if (range.from || range.to) filtered = share_report(corpus, range);
    write_shares_csv(f, all, filtered, range);
  }
}

}  // namespace formalism
