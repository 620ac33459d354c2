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
#include <sstream>

#include "doctest.h"
#include "formalism/errors.hpp"
#include "formalism/pipeline.hpp"
#include "synthetic.hpp"

using namespace formalism;
using namespace formalism::testing;

namespace {

const MlpModel& trained_model() {
  static const MlpModel model = [] {
    auto all = labeled_features(pl_threshold_corpus(200, 21));
    std::vector<LabeledVector> train(all.begin(), all.begin() + 150);
    std::vector<LabeledVector> val(all.begin() + 150, all.end());
    MlpConfig cfg;
    cfg.seed = 1;
    return train_mlp(train, val, cfg);
  }();
  return model;
}

StageBackend external(const std::string& flags, double timeout = 30.0) {
  StageBackend b;
  b.kind = BackendKind::kExternal;
  b.command = "'" + mock_backend_path().string() + "' " + flags;
  b.timeout_seconds = timeout;
  return b;
}

StageBackend replay(const std::filesystem::path& answers) {
  StageBackend b;
  b.kind = BackendKind::kReplay;
  b.answers = answers;
  return b;
}

std::filesystem::path gold_answers(const Corpus& c, const std::string& tag) {
  auto path = scratch_dir(tag) / "answers.ndjson";
  std::ofstream out(path);
  write_gold_answers(out, c);
  return path;
}

std::size_t paragraph_count(const Corpus& c) {
  std::size_t n = 0;
  for (const auto& d : c.documents) n += d.paragraphs.size();
  return n;
}

}  // namespace

TEST_CASE("wire format round trip") {
  StageRequest q{"d0:p3", StageTask::kTypes, "text with \"quotes\"\nand newline", 0};
  auto line = format_request(q);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(paragraph_request_id(4, 17) == "d4:p17");
  StageResponse r{"d0:p3", 0.25, std::nullopt};
  auto back = parse_response(format_response(r));
  CHECK(back.id == "d0:p3");
  CHECK(back.presence_prob == 0.25);
  CHECK_FALSE(back.type_probs);
  std::array<double, kNumArgumentTypes> tp{0.1, 0, 0.9, 0, 0, 0, 0, 0.5};
  StageResponse t{"x", std::nullopt, tp};
  CHECK(parse_response(format_response(t)).type_probs == tp);
  CHECK_THROWS_AS(parse_response("nope"), ProtocolError);
  CHECK_THROWS_AS(parse_response(R"({"presence_prob":0.5})"), ProtocolError);
  CHECK_THROWS_AS(parse_response(R"({"id":"x","type_probs":{"CL":0.5}})"), ProtocolError);
}

TEST_CASE("match_responses checks ids and probabilities") {
  std::vector<StageRequest> reqs{{"a", StageTask::kPresence, "t", 0},
                                 {"b", StageTask::kPresence, "t", 1}};
  auto ok = match_responses(reqs, {{"b", 0.2, {}}, {"a", 0.7, {}}});
  CHECK(ok[0].id == "a");
  CHECK(ok[1].presence_prob == 0.2);
  CHECK_THROWS_AS(match_responses(reqs, {{"a", 0.7, {}}}), ProtocolError);
  CHECK_THROWS_AS(match_responses(reqs, {{"a", 0.7, {}}, {"a", 0.7, {}}, {"b", 0.1, {}}}),
                  ProtocolError);
  CHECK_THROWS_AS(match_responses(reqs, {{"a", 0.7, {}}, {"c", 0.1, {}}}), ProtocolError);
  CHECK_THROWS_AS(match_responses(reqs, {{"a", 1.5, {}}, {"b", 0.1, {}}}), ProtocolError);
  CHECK_THROWS_AS(match_responses(reqs, {{"a", std::nullopt, {}}, {"b", 0.1, {}}}),
                  ProtocolError);
}

TEST_CASE("gold replay reproduces the MLP on gold features") {
  auto c = pl_threshold_corpus(40, 5);
  auto answers = gold_answers(c, "gold_replay");
  PipelineConfig cfg;
  cfg.stage1 = replay(answers);
  cfg.stage2 = replay(answers);
  cfg.batch_size = 7;
  const auto& m = trained_model();
  auto out = run_pipeline(c, cfg, m);
  REQUIRE(out.results.size() == c.documents.size());
  for (std::size_t i = 0; i < c.documents.size(); ++i) {
    const auto& d = c.documents[i];
    const auto& r = out.results[i];
    auto gold = extract_features(d);
    CHECK(r.doc_id == d.doc_id);
    CHECK(r.features == gold);
    CHECK(r.probability == m.predict(gold));
    CHECK((r.label == HolisticLabel::kNonFormalistic) == m.predict_non_formalistic(gold));
    for (std::size_t p = 0; p < d.paragraphs.size(); ++p) {
      CHECK(r.retained[p] == !d.paragraphs[p].argument_types.empty());
      CHECK(r.types[p] == d.paragraphs[p].argument_types);
    }
  }
  CHECK(out.timing.stage1_requests == paragraph_count(c));
}

TEST_CASE("filtering off equals an all-pass filter") {
  auto c = fixture20();
  PipelineConfig on;
  on.stage1 = external("--presence 1");
  on.stage2 = external("--type CL=0.9 --type PL=0.6");
  auto off = on;
  off.filtering_enabled = false;
  const auto& m = trained_model();
  auto a = run_pipeline(c, on, m);
  auto b = run_pipeline(c, off, m);
  CHECK(a.results == b.results);
  CHECK(b.timing.stage1_requests == 0);
}

TEST_CASE("mock backend: shuffled answers and threshold semantics") {
  auto c = fixture20();
  PipelineConfig ordered;
  ordered.stage1 = external("");
  ordered.stage2 = external("--type CL=0.9 --type TI=0.5 --type PL=0.49");
  ordered.batch_size = 9;
  auto shuffled = ordered;
  shuffled.stage1 = external("--shuffle");
  shuffled.stage2 = external("--shuffle --type CL=0.9 --type TI=0.5 --type PL=0.49");
  const auto& m = trained_model();
  auto a = run_pipeline(c, ordered, m);
  auto b = run_pipeline(c, shuffled, m);
  CHECK(a.results == b.results);
  for (const auto& r : a.results) {
    for (std::size_t p = 0; p < r.types.size(); ++p) {
      CHECK(r.retained[p]);
      // 0.5 reaches the threshold, 0.49 does not.
      CHECK(r.types[p] == ArgumentSet{ArgumentType::CL, ArgumentType::TI});
    }
  }
}

TEST_CASE("filtered paragraphs are never sent to stage 2") {
  auto c = fixture20();
  PipelineConfig cfg;
  cfg.stage1 = external("--presence 0.2");
  cfg.stage2 = external("--exit 9");  // would fail if it were ever started
  auto out = run_pipeline(c, cfg, trained_model());
  CHECK(out.timing.stage2_requests == 0);
  for (const auto& r : out.results) {
    for (std::size_t p = 0; p < r.types.size(); ++p) {
      CHECK_FALSE(r.retained[p]);
      CHECK(r.types[p].empty());
    }
    // Zero arguments: everything but the length is zero.
    CHECK(r.features.doc_length_tokens() == 18);
    for (std::size_t k = 1; k < kNumFeatures; ++k) CHECK(r.features[k] == 0.0);
  }
}

TEST_CASE("length over retained paragraphs only") {
  auto c = fixture20();
  auto answers = gold_answers(c, "retained_len");
  PipelineConfig cfg;
  cfg.stage1 = replay(answers);
  cfg.stage2 = replay(answers);
  cfg.length_over_retained = true;
  auto out = run_pipeline(c, cfg, trained_model());
  for (std::size_t i = 0; i < 20; ++i) {
    // p0 (3 tokens) and p1 (5 tokens) always carry arguments; p2 only when i%5==0.
    CHECK(out.results[i].features.doc_length_tokens() == (i % 5 == 0 ? 18 : 8));
  }
}

TEST_CASE("protocol violations are reported") {
  auto c = fixture20();
  const auto& m = trained_model();
  for (const char* flags : {"--drop-first", "--duplicate-first", "--prob 1.5", "--garbage",
                            "--exit 3", "--prob nan"}) {
    CAPTURE(flags);
    PipelineConfig cfg;
    cfg.stage1 = external(flags);
    cfg.stage2 = external("");
    CHECK_THROWS_AS(run_pipeline(c, cfg, m), ProtocolError);
  }
  PipelineConfig missing;
  missing.stage1 = external("");
  missing.stage2 = StageBackend{};
  missing.stage2.kind = BackendKind::kExternal;
  missing.stage2.command = "/nonexistent/formalism-backend";
  CHECK_THROWS_AS(run_pipeline(c, missing, m), ProtocolError);
}

TEST_CASE("slow backend times out") {
  auto c = fixture20();
  PipelineConfig cfg;
  cfg.stage1 = external("--sleep 5", 0.3);
  cfg.stage2 = external("");
  CHECK_THROWS_AS(run_pipeline(c, cfg, trained_model()), ProtocolError);
}

TEST_CASE("subprocess transport returns stdout lines") {
  auto lines = run_subprocess_batch("cat", "a\nb\n\nc\n", 5.0);
  CHECK(lines == std::vector<std::string>{"a", "b", "c"});
  CHECK_THROWS_AS(run_subprocess_batch("exit 4", "", 5.0), ProtocolError);
}

TEST_CASE("replaying recorded answers is bit exact and batch size independent") {
  auto c = pl_threshold_corpus(30, 8);
  auto answers = gold_answers(c, "batching");
  const auto& m = trained_model();
  PipelineConfig cfg;
  cfg.stage1 = replay(answers);
  cfg.stage2 = replay(answers);
  cfg.batch_size = 1;
  auto a = run_pipeline(c, cfg, m);
  cfg.batch_size = 1000;
  auto b = run_pipeline(c, cfg, m);
  CHECK(a.results == b.results);
}

TEST_CASE("builtin backends run end to end") {
  auto c = fixture20();
  const auto& m = trained_model();
  PipelineConfig cfg;
  cfg.stage1.kind = BackendKind::kBuiltinRandom;
  cfg.stage1.seed = 4;
  cfg.stage2.kind = BackendKind::kBuiltinTrigger;
  cfg.stage2.lexicon = std::filesystem::path(FORMALISM_DATA_DIR) / "lexicons" / "en.tsv";
  auto a = run_pipeline(c, cfg, m);
  auto b = run_pipeline(c, cfg, m);
  CHECK(a.results == b.results);
  std::size_t kept = 0, total = 0;
  for (const auto& r : a.results) {
    for (bool k : r.retained) kept += k;
    total += r.retained.size();
  }
  CHECK(kept > 0);
  CHECK(kept < total);

  PipelineConfig majority;
  majority.stage1.kind = BackendKind::kBuiltinMajority;
  majority.stage2.kind = BackendKind::kBuiltinMajority;
  auto z = run_pipeline(c, majority, m);
  for (const auto& r : z.results) {
    for (bool k : r.retained) CHECK_FALSE(k);
  }
}

TEST_CASE("pipeline config file") {
  auto dir = scratch_dir("config");
  std::istringstream good(R"({"format_version":1,"filtering_enabled":true,
    "stage1":{"kind":"builtin_trigger","lexicon":"lex.tsv"},
    "stage2":{"kind":"external","command":"run-me","timeout_seconds":5},
    "stage3":"model.json","batch_size":16})");
  auto cfg = read_pipeline_config(good, dir);
  CHECK(cfg.stage1.kind == BackendKind::kBuiltinTrigger);
  CHECK(cfg.stage1.lexicon == dir / "lex.tsv");
  CHECK(cfg.stage2.command == "run-me");
  CHECK(cfg.stage2.timeout_seconds == 5.0);
  CHECK(cfg.stage3_model == dir / "model.json");
  CHECK(cfg.batch_size == 16);
  auto bad = [&](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_pipeline_config(in, dir), ValidationError);
  };
  bad(R"({"format_version":2,"stage2":{"kind":"builtin_majority"},"stage3":"m"})");
  bad(R"({"format_version":1,"filtering_enabled":false,"stage2":{"kind":"builtin_majority"},"stage3":"m","extra":1})");
  bad(R"({"format_version":1,"filtering_enabled":false,"stage2":{"kind":"telepathy"},"stage3":"m"})");
  bad(R"({"format_version":1,"stage2":{"kind":"builtin_majority"},"stage3":"m"})");
  bad(R"({"format_version":1,"filtering_enabled":false,"stage2":{"kind":"external"},"stage3":"m"})");
  bad(R"({"format_version":1,"filtering_enabled":false,"stage2":{"kind":"builtin_majority","threshold":2},"stage3":"m"})");
  bad("not json");
}

TEST_CASE("predicted corpus and results record") {
  auto c = fixture20();
  auto answers = gold_answers(c, "predicted");
  PipelineConfig cfg;
  cfg.stage1 = replay(answers);
  cfg.stage2 = replay(answers);
  auto out = run_pipeline(c, cfg, trained_model());
  auto pc = predicted_corpus(c, out.results);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(pc.documents[i].holistic_label == out.results[i].label);
    for (std::size_t p = 0; p < 3; ++p) {
      CHECK(pc.documents[i].paragraphs[p].argument_types ==
            c.documents[i].paragraphs[p].argument_types);
    }
  }
  std::ostringstream rec;
  write_results(rec, out.results, &out.timing);
  auto j = nlohmann::json::parse(rec.str());
  CHECK(j["kind"] == "formalism-pipeline-results");
  CHECK(j["documents"].size() == 20);
  CHECK(j.contains("timing"));
}
