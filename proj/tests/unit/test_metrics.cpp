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

#include <memory>
#include <vector>

#include "doctest.h"
#include "formalism/errors.hpp"
#include "formalism/metrics.hpp"
#include "formalism/rng.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace formalism;
using namespace formalism::testing;

namespace {

// std::vector<bool> has no contiguous storage; keep a plain buffer.
struct Bools {
  explicit Bools(std::initializer_list<int> v) : n(v.size()), data(new bool[v.size()]) {
    std::size_t i = 0;
    for (int x : v) data[i++] = x != 0;
  }
  Bools(std::size_t count, bool value) : n(count), data(new bool[count]) {
    for (std::size_t i = 0; i < n; ++i) data[i] = value;
  }
  std::span<const bool> span() const { return {data.get(), n}; }
  std::size_t n;
  std::unique_ptr<bool[]> data;
};

Bools majority_gold() {
  Bools g(29, false);
  for (std::size_t i = 17; i < 29; ++i) g.data[i] = true;  // 12 non-formalistic
  return g;
}

}  // namespace

TEST_CASE("majority row 29.3 / 50.0 / 36.9") {
  auto gold = majority_gold();
  Bools pred(29, false);
  auto r = binary_macro_prf(gold.span(), pred.span());
  auto shown = present(r);
  CHECK(shown.macro.precision == 29.3);
  CHECK(shown.macro.recall == 50.0);
  CHECK(shown.macro.f1 == 36.9);
  // Full precision stays available.
  CHECK(r.macro_f1 == doctest::Approx(17.0 / 46.0).epsilon(1e-15));
  CHECK(shown.positive.f1 == 0.0);
  CHECK(shown.negative.precision == 58.6);
}

TEST_CASE("binary macro examples") {
  Bools g{0, 0, 1, 1};
  auto perfect = binary_macro_prf(g.span(), g.span());
  CHECK(perfect.macro_precision == 1.0);
  CHECK(perfect.macro_recall == 1.0);
  CHECK(perfect.macro_f1 == 1.0);
  Bools p{0, 1, 1, 1};
  auto r = binary_macro_prf(g.span(), p.span());
  CHECK(percent(r.macro_precision) == 83.3);
  CHECK(percent(r.macro_recall) == 75.0);
  CHECK(percent(r.macro_f1) == 73.3);
  CHECK(present(r).macro.f1 == 73.3);
  CHECK(present(perfect).macro.f1 == 100.0);
  Bools shorter{0, 1};
  CHECK_THROWS_AS(binary_macro_prf(g.span(), shorter.span()), ValidationError);
  CHECK_THROWS_AS(binary_macro_prf({}, {}), ValidationError);
}

TEST_CASE("majority on a negative-heavy task is p/(1+p)") {
  // 873 negatives, 127 positives, predict all negative.
  Bools gold(1000, false);
  for (std::size_t i = 0; i < 127; ++i) gold.data[i] = true;
  Bools pred(1000, false);
  auto r = binary_macro_prf(gold.span(), pred.span());
  const double p = 0.873;
  CHECK(r.macro_f1 == doctest::Approx(p / (1 + p)).epsilon(1e-12));
  CHECK(percent(r.macro_f1) == 46.6);
  CHECK(present(r).macro.f1 == 46.6);
}

TEST_CASE("per label F1 from counts") {
  BinaryCounts c{2, 1, 1, 6};
  CHECK(f1_positive(c) == doctest::Approx(2.0 / 3.0));
  CHECK(f1_negative(c) == doctest::Approx(12.0 / 14.0));
  CHECK((f1_positive(c) + f1_negative(c)) / 2 == doctest::Approx(0.7619).epsilon(1e-4));
  CHECK(f1_positive(BinaryCounts{0, 0, 0, 5}) == 0.0);
  CHECK(safe_ratio(0, 0) == 0.0);
}

TEST_CASE("multilabel report identities") {
  Rng rng(3);
  auto gold = random_sets(200, rng, 0.2);
  auto r = multilabel_report(gold, gold);
  CHECK(r.macro_all == 1.0);
  for (const auto& l : r.per_label) {
    CHECK(l.f1_neg == 1.0);
    if (l.counts.tp > 0) CHECK(l.f1_pos == 1.0);
    CHECK(l.macro_f1 == (l.f1_pos + l.f1_neg) / 2);
  }
  // Absent labels still count toward the mean over the full inventory. CL is
  // always present, so its F1- is 0/0 = 0; every other label has F1+ = 0.
  std::vector<ArgumentSet> only_cl(10, ArgumentSet{ArgumentType::CL});
  auto r2 = multilabel_report(only_cl, only_cl);
  CHECK(r2.per_label.size() == 8);
  CHECK(r2.macro_all == 0.5);
  CHECK(r2.mean_f1_pos == 1.0 / 8);
}

TEST_CASE("multilabel report equals brute force recount") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    auto n = 1 + rng.uniform_index(300);
    auto gold = random_sets(n, rng, rng.uniform01() * 0.5);
    auto pred = random_sets(n, rng, rng.uniform01() * 0.5);
    auto r = multilabel_report(gold, pred);
    auto b = brute_multilabel(gold, pred);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(r.per_label[i].f1_pos == b[i].f1_pos);
      CHECK(r.per_label[i].f1_neg == b[i].f1_neg);
      CHECK(r.per_label[i].macro_f1 == b[i].macro);
    }
  }
}

TEST_CASE("parallel and serial counts agree") {
  Rng rng(8);
  for (std::size_t n : {0u, 1u, 100u, 4095u, 4096u, 50000u}) {
    auto gold = random_sets(n, rng, 0.3);
    auto pred = random_sets(n, rng, 0.3);
    CHECK(multilabel_counts(gold, pred) == multilabel_counts_serial(gold, pred));
  }
}

TEST_CASE("single label reduces to the binary problem") {
  Rng rng(12);
  auto only_pl = [](std::vector<ArgumentSet> v) {
    for (auto& s : v) {
      bool pl = s.contains(ArgumentType::PL);
      s = pl ? ArgumentSet{ArgumentType::PL} : ArgumentSet{};
    }
    return v;
  };
  auto gold = only_pl(random_sets(300, rng, 0.3));
  auto pred = only_pl(random_sets(300, rng, 0.3));
  std::vector<ArgumentType> inv{ArgumentType::PL};
  auto r = multilabel_report(gold, pred, inv);
  REQUIRE(r.per_label.size() == 1);
  Bools g(300, false), p(300, false);
  for (std::size_t i = 0; i < 300; ++i) {
    g.data[i] = gold[i].contains(ArgumentType::PL);
    p.data[i] = pred[i].contains(ArgumentType::PL);
  }
  auto b = binary_macro_prf(g.span(), p.span());
  CHECK(r.per_label[0].f1_pos == doctest::Approx(b.positive.f1).epsilon(1e-15));
  CHECK(r.per_label[0].f1_neg == doctest::Approx(b.negative.f1).epsilon(1e-15));
  CHECK(r.macro_all == doctest::Approx(b.macro_f1).epsilon(1e-15));
}

TEST_CASE("labels outside the inventory are rejected") {
  std::vector<ArgumentSet> gold{{ArgumentType::CL}};
  std::vector<ArgumentSet> pred{{ArgumentType::PL}};
  std::vector<ArgumentType> inv{ArgumentType::CL};
  CHECK_THROWS_AS(multilabel_report(gold, pred, inv), ValidationError);
  std::vector<ArgumentSet> shorter;
  CHECK_THROWS_AS(multilabel_report(gold, shorter), ValidationError);
}

TEST_CASE("turning a false positive into a true negative never lowers F1") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    BinaryCounts c{rng.uniform_index(10), 1 + rng.uniform_index(10), rng.uniform_index(10),
                   rng.uniform_index(10)};
    BinaryCounts d = c;
    --d.fp;
    ++d.tn;
    CHECK(f1_positive(d) >= f1_positive(c));
    CHECK(f1_negative(d) >= f1_negative(c));
  }
}

TEST_CASE("percent rounds half up at presentation") {
  CHECK(percent(0.2925) == 29.3);
  CHECK(percent(0.5) == 50.0);
  CHECK(percent(0.36885) == 36.9);
  CHECK(percent(0.0) == 0.0);
  CHECK(percent(1.0) == 100.0);
}
