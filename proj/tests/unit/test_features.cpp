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


#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "formalism/errors.hpp"
#include "formalism/features.hpp"
#include "formalism/rng.hpp"
#include "synthetic.hpp"

using namespace formalism;
using namespace formalism::testing;

namespace {

Document ten_paragraphs() {
  std::vector<std::pair<std::string, ArgumentSet>> paras;
  for (int i = 0; i < 10; ++i) paras.push_back({words(100), {}});
  paras[1].second = {ArgumentType::CL};
  paras[4].second = {ArgumentType::CL};
  paras[7].second = {ArgumentType::PL};
  return make_doc("d", Court::SC, 2015, HolisticLabel::kFormalistic, paras);
}

}  // namespace

TEST_CASE("feature names and order") {
  const auto& n = feature_names();
  CHECK(n.size() == 11);
  CHECK(n[0] == "doc_length_tokens");
  CHECK(n[1] == "n_arguments");
  CHECK(n[2] == "avg_argument_length_tokens");
  CHECK(n[3] == "LIN");
  CHECK(n[10] == "PC");
}

TEST_CASE("ten paragraphs with CL, CL, PL") {
  auto f = extract_features(ten_paragraphs());
  CHECK(f.doc_length_tokens() == 1000);
  CHECK(f.n_arguments() == 3);
  CHECK(f.avg_argument_length_tokens() == 100.0);
  CHECK(f.rel_freq(ArgumentType::CL) == doctest::Approx(200.0 / 3.0));
  CHECK(f.rel_freq(ArgumentType::PL) == doctest::Approx(100.0 / 3.0));
  for (auto t : {ArgumentType::LIN, ArgumentType::SI, ArgumentType::D, ArgumentType::HI,
                 ArgumentType::TI, ArgumentType::PC}) {
    CHECK(f.rel_freq(t) == 0.0);
  }
}

TEST_CASE("multi-type paragraph counts every type once") {
  auto d = make_doc("d", Court::SAC, 2012, std::nullopt,
                    {{words(4), {ArgumentType::PL, ArgumentType::TI}}, {words(8), {}}});
  auto f = extract_features(d);
  CHECK(f.doc_length_tokens() == 12);
  CHECK(f.n_arguments() == 2);
  CHECK(f.avg_argument_length_tokens() == 4.0);
  CHECK(f.rel_freq(ArgumentType::PL) == 50.0);
  CHECK(f.rel_freq(ArgumentType::TI) == 50.0);
}

TEST_CASE("zero arguments is all zeros except length") {
  auto d = make_doc("d", Court::SC, 2010, std::nullopt, {{words(7), {}}, {words(3), {}}});
  auto f = extract_features(d);
  CHECK(f.doc_length_tokens() == 10);
  for (std::size_t i = 1; i < kNumFeatures; ++i) CHECK(f[i] == 0.0);
}

TEST_CASE("features ignore paragraph order and relative frequencies sum to 100") {
  Rng rng(4);
  auto c = pl_threshold_corpus(30, 9);
  for (auto& d : c.documents) {
    auto f = extract_features(d);
    auto shuffled = d;
    rng.shuffle(std::span(shuffled.paragraphs));
    CHECK(extract_features(shuffled) == f);
    double sum = 0;
    for (auto t : kAllArgumentTypes) sum += f.rel_freq(t);
    if (f.n_arguments() > 0) CHECK(sum == doctest::Approx(100.0).epsilon(1e-12));
  }
}

TEST_CASE("labeled features need labels") {
  auto c = fixture20();
  auto v = labeled_features(c);
  REQUIRE(v.size() == 20);
  CHECK(v[0].non_formalistic);
  CHECK_FALSE(v[1].non_formalistic);
  c.documents[5].holistic_label.reset();
  CHECK_THROWS_AS(labeled_features(c), ValidationError);
}

TEST_CASE("scaler examples") {
  FeatureVector a, b;
  a[0] = 0;
  b[0] = 2;
  a[1] = b[1] = 5;  // constant component
  std::vector<FeatureVector> train{a, b};
  auto s = Scaler::fit(train);
  CHECK(s.apply(a)[0] == -1.0);
  CHECK(s.apply(b)[0] == 1.0);
  CHECK(s.scale()[1] == 1.0);
  CHECK(s.apply(a)[1] == 0.0);
  CHECK(s.apply(b)[1] == 0.0);
  CHECK_THROWS_AS(Scaler::fit({}), ValidationError);
}

TEST_CASE("fit then apply standardizes training data") {
  auto c = pl_threshold_corpus(200, 2);
  std::vector<FeatureVector> xs;
  for (const auto& d : c.documents) xs.push_back(extract_features(d));
  auto s = Scaler::fit(xs);
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    double sum = 0, sq = 0;
    for (const auto& x : xs) sum += s.apply(x)[k];
    double mean = sum / static_cast<double>(xs.size());
    for (const auto& x : xs) sq += (s.apply(x)[k] - mean) * (s.apply(x)[k] - mean);
    double sd = std::sqrt(sq / static_cast<double>(xs.size()));
    CHECK(std::abs(mean) < 1e-9);
    if (s.scale()[k] != 1.0 || sd > 0) CHECK(std::abs(sd - 1.0) < 1e-9);
  }
  // Validation data is not standardized by train statistics in general.
  auto other = pl_threshold_corpus(50, 77);
  double vsum = 0;
  for (const auto& d : other.documents) vsum += s.apply(extract_features(d))[0];
  CHECK(std::abs(vsum / 50.0) > 1e-9);
  // invert undoes apply.
  auto back = s.invert(s.apply(xs[3]));
  for (std::size_t k = 0; k < kNumFeatures; ++k) {
    CHECK(back[k] == doctest::Approx(xs[3][k]).epsilon(1e-12));
  }
}

TEST_CASE("features csv round trip") {
  auto c = fixture20();
  std::ostringstream out;
  write_features_csv(out, c);
  CHECK(out.str().rfind("doc_id,doc_length_tokens,n_arguments,", 0) == 0);
  std::istringstream in(out.str());
  auto back = read_features_csv(in);
  REQUIRE(back.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(back[i].doc_id == c.documents[i].doc_id);
    CHECK(back[i].x == extract_features(c.documents[i]));
  }
  std::istringstream bad("doc_id,x\nd,1\n");
  CHECK_THROWS_AS(read_features_csv(bad), ValidationError);
}
