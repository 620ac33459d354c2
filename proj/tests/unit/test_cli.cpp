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


// Drives the installed command-line binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "formalism/corpus.hpp"
#include "formalism/split.hpp"
#include "json.hpp"
#include "synthetic.hpp"

using namespace formalism;
using namespace formalism::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Run cli(const std::string& args) {
  static const fs::path dir = scratch_dir("cli_io");
  auto out = dir / "stdout", err = dir / "stderr";
  std::string cmd = std::string("'") + FORMALISM_CLI + "' " + args + " >'" + out.string() +
                    "' 2>'" + err.string() + "'";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

fs::path write(const fs::path& p, const Corpus& c) {
  save_corpus(p, c);
  return p;
}

}  // namespace

TEST_CASE("usage errors exit 3, help exits 0") {
  CHECK(cli("").code == 3);
  CHECK(cli("frobnicate").code == 3);
  CHECK(cli("validate --bogus x").code == 3);
  CHECK(cli("validate").code == 3);
  CHECK(cli("stats --corpus x --format yaml").code == 3);
  auto help = cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("pipeline") != std::string::npos);
  for (const char* sub : {"validate", "stats", "split", "iaa", "baseline", "eval", "train-mlp",
                          "predict-mlp", "explain", "pipeline", "pipeline run", "report"}) {
    CAPTURE(sub);
    CHECK(cli(std::string(sub) + " --help").code == 0);
  }
}

TEST_CASE("validate and stats") {
  auto dir = scratch_dir("cli_validate");
  auto corpus = write(dir / "c.jsonl", fixture20());
  auto ok = cli("validate --corpus " + q(corpus));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("20") != std::string::npos);
  std::ofstream(dir / "bad.jsonl") << R"({"doc_id":"x","court":"XX"})" << "\n";
  auto bad = cli("validate --corpus " + q(dir / "bad.jsonl"));
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());
  CHECK(cli("validate --corpus " + q(dir / "missing.jsonl")).code == 1);

  auto csv = cli("stats --format csv --corpus " + q(corpus));
  CHECK(csv.code == 0);
  CHECK(csv.out.find(',') != std::string::npos);
  auto rec = cli("stats --format record --corpus " + q(corpus));
  REQUIRE(rec.code == 0);
  auto j = nlohmann::json::parse(rec.out);
  CHECK(j["format_version"] == 1);
  CHECK(j.contains("rows"));
}

TEST_CASE("split is byte identical for a fixed seed") {
  auto dir = scratch_dir("cli_split");
  auto corpus = write(dir / "c.jsonl", strata_corpus(20, 8, 12, 6));
  std::string base = "split --corpus " + q(corpus) + " --ratios 0.7 0.2 0.1 ";
  CHECK(cli(base + "--seed 7 --out " + q(dir / "a.csv")).code == 0);
  CHECK(cli(base + "--seed 7 --out " + q(dir / "b.csv")).code == 0);
  CHECK(cli(base + "--seed 8 --out " + q(dir / "c.csv")).code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));
  CHECK(cli(base.substr(0, base.find("--ratios")) + "--ratios 0.7 0.2").code == 3);
  CHECK(cli(base.substr(0, base.find("--ratios")) + "--ratios 0.5 0.2 0.1").code == 1);
}

TEST_CASE("baseline then eval prints the majority row") {
  auto dir = scratch_dir("cli_eval");
  auto train = write(dir / "train.jsonl", strata_corpus(10, 2, 4, 3));
  auto test = write(dir / "test.jsonl", strata_corpus(12, 5, 8, 4));
  auto pred = dir / "majority.jsonl";
  CHECK(cli("baseline --kind majority --task 3 --train " + q(train) + " --corpus " + q(test) +
            " --out " + q(pred))
            .code == 0);
  auto r = cli("eval --task 3 --gold " + q(test) + " --pred " + q(pred));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("macro\t29.3\t50.0\t36.9") != std::string::npos);
  auto missing = cli("eval --task 3 --gold " + q(test) + " --pred " + q(train));
  CHECK(missing.code == 1);
  auto rnd1 = cli("baseline --kind random --task 2 --seed 3 --train " + q(train) +
                  " --corpus " + q(test));
  auto rnd2 = cli("baseline --kind random --task 2 --seed 3 --train " + q(train) +
                  " --corpus " + q(test));
  CHECK(rnd1.code == 0);
  CHECK(rnd1.out == rnd2.out);
}

TEST_CASE("train, predict and explain") {
  auto dir = scratch_dir("cli_mlp");
  auto corpus = write(dir / "c.jsonl", pl_threshold_corpus(120, 4));
  auto split = dir / "split.csv";
  REQUIRE(cli("split --corpus " + q(corpus) + " --seed 1 --out " + q(split)).code == 0);
  std::string train = "train-mlp --corpus " + q(corpus) + " --split " + q(split) + " --seed 9 ";
  REQUIRE(cli(train + "--out " + q(dir / "m1.json")).code == 0);
  REQUIRE(cli(train + "--out " + q(dir / "m2.json")).code == 0);
  CHECK(slurp(dir / "m1.json") == slurp(dir / "m2.json"));
  auto p = cli("predict-mlp --format csv --model " + q(dir / "m1.json") + " --corpus " +
               q(corpus));
  CHECK(p.code == 0);
  auto e = cli("explain --model " + q(dir / "m1.json") + " --corpus " + q(corpus) +
               " --split " + q(split) + " --part test");
  CHECK(e.code == 0);
  CHECK(e.out.find("PL") != std::string::npos);
}

TEST_CASE("pipeline run and backend failures") {
  auto dir = scratch_dir("cli_pipeline");
  auto corpus = write(dir / "c.jsonl", pl_threshold_corpus(80, 6));
  auto split = dir / "split.csv";
  REQUIRE(cli("split --corpus " + q(corpus) + " --seed 1 --out " + q(split)).code == 0);
  REQUIRE(cli("train-mlp --corpus " + q(corpus) + " --split " + q(split) + " --out " +
              q(dir / "model.json"))
              .code == 0);
  REQUIRE(cli("pipeline gold-answers --in " + q(corpus) + " --out " + q(dir / "gold.ndjson"))
              .code == 0);
  std::ofstream(dir / "replay.json")
      << R"({"format_version":1,"stage1":{"kind":"replay","answers":"gold.ndjson"},)"
      << R"("stage2":{"kind":"replay","answers":"gold.ndjson"},"stage3":"model.json"})";
  auto r = cli("pipeline run --config " + q(dir / "replay.json") + " --in " + q(corpus) +
               " --out " + q(dir / "results.json") + " --corpus-out " + q(dir / "pred.jsonl"));
  CHECK(r.code == 0);
  auto results = nlohmann::json::parse(slurp(dir / "results.json"));
  CHECK(results["documents"].size() == 80);
  CHECK(load_corpus(dir / "pred.jsonl").documents.size() == 80);

  std::ofstream(dir / "broken.json")
      << R"({"format_version":1,"filtering_enabled":false,)"
      << R"("stage2":{"kind":"external","command":")" << mock_backend_path().string()
      << R"( --drop-first"},"stage3":"model.json"})";
  auto broken = cli("pipeline run --config " + q(dir / "broken.json") + " --in " + q(corpus) +
                    " --out " + q(dir / "x.json"));
  CHECK(broken.code == 2);
  CHECK(broken.err.find("backend") != std::string::npos);
}

TEST_CASE("iaa and report") {
  auto dir = scratch_dir("cli_iaa");
  auto a = write(dir / "a.jsonl", fixture20());
  auto r = cli("iaa --format csv --a " + q(a) + " --b " + q(a));
  CHECK(r.code == 0);
  CHECK(r.out.find("cohen_kappa") != std::string::npos);
  auto rep = cli("report --corpus " + q(a) + " --from 2010 --out " + q(dir / "report"));
  CHECK(rep.code == 0);
  CHECK(fs::exists(dir / "report" / "trends.csv"));
}
