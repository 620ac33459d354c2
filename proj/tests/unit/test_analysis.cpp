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


#include <fstream>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "formalism/analysis.hpp"
#include "formalism/errors.hpp"
#include "synthetic.hpp"

using namespace formalism;
using namespace formalism::testing;

namespace {

using Counts = std::array<std::size_t, kNumArgumentTypes>;

const TrendPoint& at_year(const std::vector<TrendPoint>& s, int year) {
  for (const auto& p : s) {
    if (p.bucket_start <= year && year <= p.bucket_end) return p;
  }
  FAIL("no bucket for year " << year);
  return s.front();
}

// SC docs formalistic with one CL; SAC docs non-formalistic with one PL
// from 2014 on and formalistic with one CL before.
Corpus extreme_corpus() {
  Corpus c;
  for (int y = 2008; y <= 2020; ++y) {
    c.documents.push_back(make_doc("sc" + std::to_string(y), Court::SC, y,
                                   HolisticLabel::kFormalistic,
                                   {{words(4), {ArgumentType::CL}}}));
    bool late = y >= 2014;
    c.documents.push_back(make_doc(
        "sac" + std::to_string(y), Court::SAC, y,
        late ? HolisticLabel::kNonFormalistic : HolisticLabel::kFormalistic,
        {{words(4), {late ? ArgumentType::PL : ArgumentType::CL}}}));
  }
  return c;
}

}  // namespace

TEST_CASE("distribution on the twenty document fixture") {
  auto r = argument_distribution(fixture20());
  CHECK(r.overall.frequency == Counts{3, 3, 23, 3, 2, 6, 6, 2});
  CHECK(r.overall.existence == Counts{3, 3, 20, 3, 2, 5, 6, 2});
  CHECK(r.sc.frequency == Counts{2, 2, 14, 2, 1, 4, 4, 1});
  CHECK(r.sc.existence == Counts{2, 2, 12, 2, 1, 3, 4, 1});
  CHECK(r.sac.frequency == Counts{1, 1, 9, 1, 1, 2, 2, 1});
  CHECK(r.overall.n_arguments() == 48);
  CHECK(r.sc.n_documents == 12);
  CHECK(r.sac.n_documents == 8);
  for (std::size_t k = 0; k < kNumArgumentTypes; ++k) {
    CHECK(r.sc.frequency[k] + r.sac.frequency[k] == r.overall.frequency[k]);
    CHECK(r.overall.existence[k] <= r.overall.frequency[k]);
  }
}

TEST_CASE("year filter") {
  auto c = fixture20();
  auto r = argument_distribution(c, YearRange{2005, 2009});
  CHECK(r.overall.n_documents == 5);
  CHECK(r.overall.frequency[index_of(ArgumentType::CL)] == 5 + 1);  // p0 x5, doc2 p1
  auto none = argument_distribution(c, YearRange{1990, 1995});
  CHECK(none.overall.n_arguments() == 0);
  CHECK(none.overall.n_documents == 0);
  CHECK(filter_by_year(c, YearRange{std::nullopt, 2006}).documents.size() == 2);
  CHECK(filter_by_year(c, YearRange{2020, std::nullopt}).documents.size() == 5);
}

TEST_CASE("holistic distribution") {
  auto h = holistic_distribution(fixture20());
  CHECK(h.sc.formalistic == 8);
  CHECK(h.sc.non_formalistic == 4);
  CHECK(h.sac.formalistic == 5);
  CHECK(h.sac.non_formalistic == 3);
  CHECK(h.overall.total() == 20);
  CHECK(h.sac.non_formalistic_share() == 3.0 / 8.0);
  auto only_sc = strata_corpus(3, 0, 2, 0);
  auto h2 = holistic_distribution(only_sc);
  CHECK(h2.sac.total() == 0);
  CHECK(h2.sac.formalistic_share() == 0.0);
  auto c = fixture20();
  c.documents[3].holistic_label.reset();
  CHECK_THROWS_AS(holistic_distribution(c), ValidationError);
}

TEST_CASE("per year trends on the fixture") {
  auto t = temporal_trends(fixture20());
  REQUIRE(t.all.size() == 20);
  for (int i = 0; i < 20; ++i) {
    const auto& p = at_year(t.all, 2005 + i);
    std::size_t f = 1 + (i % 8 < 4 ? 1 : 0);
    std::size_t nf = (i % 8 >= 4 ? 1 : 0) + (i % 5 == 0 ? 2 : 0);
    CHECK(p.n_documents == 1);
    CHECK(p.formalistic_arguments == f);
    CHECK(p.non_formalistic_arguments == nf);
    CHECK(*p.nf_to_f_ratio == static_cast<double>(nf) / static_cast<double>(f));
    CHECK(*p.mean_nf_arguments == static_cast<double>(nf));
    CHECK(*p.nf_decision_share == (i % 3 == 0 ? 1.0 : 0.0));
    CHECK(*p.zero_nf_share == (nf == 0 ? 1.0 : 0.0));
  }
  // SAC has no decisions before 2017: those buckets are undefined, not zero.
  const auto& early = at_year(t.sac, 2006);
  CHECK(early.n_documents == 0);
  CHECK_FALSE(early.mean_nf_arguments);
  CHECK_FALSE(early.nf_decision_share);
  CHECK_FALSE(early.nf_to_f_ratio);
}

TEST_CASE("two year buckets") {
  auto t = temporal_trends(fixture20(), 2);
  REQUIRE(t.all.size() == 10);
  CHECK(t.all[0].bucket_start == 2005);
  CHECK(t.all[0].bucket_end == 2006);
  CHECK(t.all[0].n_documents == 2);
  CHECK(*t.all[0].nf_decision_share == 0.5);
  CHECK_THROWS_AS(temporal_trends(fixture20(), 0), ValidationError);
}

TEST_CASE("extreme trend corpus") {
  auto t = temporal_trends(extreme_corpus());
  for (int y = 2014; y <= 2020; ++y) {
    CHECK(*at_year(t.sac, y).nf_decision_share == 1.0);
    CHECK(*at_year(t.sc, y).nf_decision_share == 0.0);
    CHECK(*at_year(t.sc, y).zero_nf_share == 1.0);
    CHECK_FALSE(at_year(t.sac, y).nf_to_f_ratio);  // no formalistic arguments
  }
  CHECK(*at_year(t.sac, 2010).nf_decision_share == 0.0);
  auto cmp = compare_periods(extreme_corpus(), Court::SAC, YearRange{2008, 2013},
                             YearRange{2014, 2020});
  CHECK(*cmp.first == 0.0);
  CHECK(*cmp.second == 1.0);
  CHECK_FALSE(cmp.relative_change);
  auto all = compare_periods(extreme_corpus(), std::nullopt, YearRange{2008, 2013},
                             YearRange{2014, 2020});
  CHECK(*all.second == 0.5);
}

TEST_CASE("period comparison relative change") {
  auto c = fixture20();
  // 2005-2009: docs 0..4, NF = {0, 3}; 2010-2014: docs 5..9, NF = {6, 9}.
  auto cmp = compare_periods(c, std::nullopt, YearRange{2005, 2009}, YearRange{2010, 2014});
  CHECK(*cmp.first == 0.4);
  CHECK(*cmp.second == 0.4);
  CHECK(*cmp.relative_change == 0.0);
  auto empty = compare_periods(c, std::nullopt, YearRange{1990, 1991}, YearRange{2010, 2014});
  CHECK_FALSE(empty.first);
  CHECK_FALSE(empty.relative_change);
}

TEST_CASE("rolling mean") {
  std::vector<std::optional<double>> s{1.0, std::nullopt, 3.0, 5.0};
  auto r = rolling_mean(s);
  REQUIRE(r.size() == 4);
  CHECK(*r[0] == 1.0);
  CHECK(*r[1] == 2.0);
  CHECK(*r[2] == 4.0);
  CHECK(*r[3] == 4.0);
  std::vector<std::optional<double>> gaps{std::nullopt, std::nullopt, std::nullopt, 2.0};
  auto g = rolling_mean(gaps);
  CHECK_FALSE(g[0]);
  CHECK(*g[2] == 2.0);
  CHECK(rolling_mean(s, 1) == s);
  CHECK_THROWS_AS(rolling_mean(s, 2), ValidationError);
}

TEST_CASE("argument shares") {
  auto s = share_report(fixture20());
  CHECK(s.total == 48);
  CHECK(s.percent[index_of(ArgumentType::CL)] == doctest::Approx(2300.0 / 48.0));
  double sum = std::accumulate(s.percent.begin(), s.percent.end(), 0.0);
  CHECK(sum == doctest::Approx(100.0).epsilon(1e-12));
  Corpus one;
  one.documents.push_back(make_doc("x", Court::SC, 2010, HolisticLabel::kFormalistic,
                                   {{words(2), {ArgumentType::TI}}}));
  CHECK(share_report(one).percent[index_of(ArgumentType::TI)] == 100.0);
  CHECK_THROWS_AS(share_report(fixture20(), YearRange{1990, 1991}), ValidationError);
}

TEST_CASE("report files") {
  auto dir = scratch_dir("report");
  write_report(fixture20(), YearRange{2010, 2024}, dir);
  for (const char* name : {"distribution.csv", "holistic.csv", "trends.csv", "shares.csv"}) {
    CHECK(std::filesystem::exists(dir / name));
  }
  std::ifstream trends(dir / "trends.csv");
  std::string header, body((std::istreambuf_iterator<char>(trends)), {});
  CHECK(body.find("NA") != std::string::npos);
  std::ifstream shares(dir / "shares.csv");
  std::getline(shares, header);
  CHECK(header.find("filter") != std::string::npos);
  std::ostringstream out;
  write_holistic_csv(out, holistic_distribution(fixture20()));
  CHECK(out.str().find("SC,8,4") != std::string::npos);
}
