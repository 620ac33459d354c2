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
#include <sstream>

#include "doctest.h"
#include "formalism/baselines.hpp"
#include "formalism/errors.hpp"
#include "formalism/rng.hpp"
#include "formalism/text.hpp"
#include "synthetic.hpp"

using namespace formalism;
using namespace formalism::testing;

namespace {

std::unique_ptr<bool[]> labels(std::size_t positives, std::size_t negatives) {
  std::unique_ptr<bool[]> b(new bool[positives + negatives]);
  for (std::size_t i = 0; i < positives + negatives; ++i) b[i] = i < positives;
  return b;
}

Paragraph para(std::string text) {
  Paragraph p;
  p.para_id = "p";
  p.text = std::move(text);
  return p;
}

TriggerLexicon lexicon_from(const std::string& text) {
  std::istringstream in(text);
  return read_lexicon(in);
}

}  // namespace

TEST_CASE("majority binary") {
  auto train = labels(77, 112);  // 77 non-formalistic, 112 formalistic
  CHECK_FALSE(majority_binary({train.get(), 189}));
  auto tie = labels(5, 5);
  CHECK_FALSE(majority_binary({tie.get(), 10}));
  auto pos = labels(6, 4);
  CHECK(majority_binary({pos.get(), 10}));
  CHECK_THROWS_AS(majority_binary({}), ValidationError);
}

TEST_CASE("majority set is empty for sparse labels") {
  Rng rng(1);
  auto train = random_sets(500, rng, 0.1);
  CHECK(majority_set(train).empty());
  std::vector<ArgumentSet> mostly_cl{{ArgumentType::CL}, {ArgumentType::CL}, {}};
  CHECK(majority_set(mostly_cl) == ArgumentSet{ArgumentType::CL});
  std::vector<ArgumentSet> half{{ArgumentType::CL}, {}};
  CHECK(majority_set(half).empty());
}

TEST_CASE("uniform random binary frequencies") {
  auto train = labels(1, 99);
  RandomBinaryPredictor p({train.get(), 100}, RandomMode::kUniform, 42);
  CHECK(p.positive_rate() == 0.5);
  std::size_t pos = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) pos += p.predict(i);
  CHECK(std::abs(static_cast<double>(pos) / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("marginal random binary frequencies") {
  auto train = labels(40, 60);
  RandomBinaryPredictor p({train.get(), 100}, RandomMode::kMarginal, 7);
  CHECK(p.positive_rate() == doctest::Approx(0.4));
  std::size_t pos = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) pos += p.predict(i);
  CHECK(std::abs(static_cast<double>(pos) / 10000.0 - 0.4) <= 0.02);
  CHECK_THROWS_AS(RandomBinaryPredictor({}, RandomMode::kMarginal, 1), ValidationError);
}

TEST_CASE("random predictors are seeded and stateless") {
  auto train = labels(40, 60);
  RandomBinaryPredictor a({train.get(), 100}, RandomMode::kUniform, 3);
  RandomBinaryPredictor b({train.get(), 100}, RandomMode::kUniform, 3);
  RandomBinaryPredictor c({train.get(), 100}, RandomMode::kUniform, 4);
  bool differs = false;
  for (std::uint64_t i = 0; i < 200; ++i) {
    CHECK(a.predict(i) == b.predict(i));
    CHECK(a.predict(i) == a.predict(i));
    differs |= a.predict(i) != c.predict(i);
  }
  CHECK(differs);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    double u = counter_uniform(5, i, 2);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(counter_uniform(5, 1, 0) != counter_uniform(5, 1, 1));
}

TEST_CASE("random set predictor rates") {
  std::vector<ArgumentSet> train(100);
  for (std::size_t i = 0; i < 30; ++i) train[i].insert(ArgumentType::PL);
  RandomSetPredictor marginal(train, RandomMode::kMarginal, 9);
  CHECK(marginal.positive_rate(ArgumentType::PL) == doctest::Approx(0.3));
  CHECK(marginal.positive_rate(ArgumentType::CL) == 0.0);
  std::size_t pl = 0, cl = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto s = marginal.predict(i);
    pl += s.contains(ArgumentType::PL);
    cl += s.contains(ArgumentType::CL);
  }
  CHECK(std::abs(static_cast<double>(pl) / 10000.0 - 0.3) <= 0.02);
  CHECK(cl == 0);
  RandomSetPredictor uniform(train, RandomMode::kUniform, 9);
  for (auto t : kAllArgumentTypes) CHECK(uniform.positive_rate(t) == 0.5);
}

TEST_CASE("random mode names") {
  CHECK(parse_random_mode("uniform") == RandomMode::kUniform);
  CHECK(parse_random_mode("marginal") == RandomMode::kMarginal);
  CHECK_FALSE(parse_random_mode("gaussian"));
  CHECK(to_string(RandomMode::kMarginal) == "marginal");
}

TEST_CASE("trigger lexicon examples") {
  auto lex = lexicon_from("LIN\tunambiguous\nCL\t Cdo \nTI\tpurpose\n");
  CHECK(trigger_classify(para("the wording of Section 3 is very unambiguous"), lex) ==
        ArgumentSet{ArgumentType::LIN});
  CHECK(trigger_classify(para("see 30 Cdo 64/2004; the purpose of the rule"), lex) ==
        ArgumentSet{ArgumentType::CL, ArgumentType::TI});
  CHECK(trigger_classify(para("nothing here"), lex).empty());
  CHECK(trigger_classify(para("The PURPOSE is clear"), lex) == ArgumentSet{ArgumentType::TI});
  TriggerLexicon empty;
  CHECK(trigger_classify(para("unambiguous purpose"), empty).empty());
}

TEST_CASE("wildcards and case folding") {
  auto lex = lexicon_from("CL\tjudgment of the * Court of\nTI\túčel*zákona\n");
  CHECK(lex.classify("In the judgment of the Supreme Court of 2010") ==
        ArgumentSet{ArgumentType::CL});
  CHECK(lex.classify("judgment of the Court of").empty());
  CHECK(lex.classify("ÚČEL tohoto ZÁKONA") == ArgumentSet{ArgumentType::TI});
  CHECK(lex.classify("zákona účel").empty());
  std::vector<std::u32string> pieces{U"ab", U"", U"cd"};
  CHECK(wildcard_contains(U"xxabyycdzz", pieces));
  CHECK_FALSE(wildcard_contains(U"cdab", pieces));
}

TEST_CASE("lexicon file errors") {
  auto with_comments = lexicon_from("\xEF\xBB\xBF# header\n\nPL\tprinciple of\n");
  CHECK(with_comments.entries().size() == 1);
  auto expect_line = [](const std::string& text, std::size_t line) {
    try {
      lexicon_from(text);
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("PL\tok\nXX\tbad code\n", 2);
  expect_line("PL no tab\n", 1);
  expect_line("# c\nPL\t(regex)+\n", 2);
  expect_line("PL\t * \n", 1);
  TriggerLexicon lex;
  CHECK_THROWS_AS(lex.add(ArgumentType::PL, "a|b"), ValidationError);
  CHECK_THROWS_AS(lex.add(ArgumentType::PL, "   "), ValidationError);
}

TEST_CASE("shipped lexicons load") {
  for (const char* name : {"en.tsv", "cs.tsv"}) {
    auto lex = load_lexicon(std::filesystem::path(FORMALISM_DATA_DIR) / "lexicons" / name);
    CHECK(lex.entries().size() > 20);
    ArgumentSet covered;
    for (const auto& e : lex.entries()) covered.insert(e.type);
    CHECK(covered.contains(ArgumentType::CL));
    CHECK(covered.contains(ArgumentType::TI));
  }
}

TEST_CASE("adding patterns never removes predicted labels") {
  auto lex = load_lexicon(std::filesystem::path(FORMALISM_DATA_DIR) / "lexicons" / "en.tsv");
  Rng rng(13);
  const auto& entries = lex.entries();
  std::vector<std::string> texts;
  for (int i = 0; i < 50; ++i) {
    std::string t = words(5);
    for (int k = 0; k < 3; ++k) t += " " + entries[rng.uniform_index(entries.size())].pattern;
    texts.push_back(t);
  }
  TriggerLexicon growing;
  std::vector<ArgumentSet> previous(texts.size());
  for (const auto& e : entries) {
    growing.add(e.type, e.pattern);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      auto now = growing.classify(texts[i]);
      for (auto t : kAllArgumentTypes) {
        if (previous[i].contains(t)) CHECK(now.contains(t));
      }
      previous[i] = now;
    }
  }
}
