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

// formalism: command-line entry point.
//
// Exit status: 0 ok, 1 invalid input, 2 backend or protocol failure,
// 3 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "formalism/agreement.hpp"
#include "formalism/analysis.hpp"
#include "formalism/attribution.hpp"
#include "formalism/baselines.hpp"
#include "formalism/corpus.hpp"
#include "formalism/errors.hpp"
#include "formalism/features.hpp"
#include "formalism/metrics.hpp"
#include "formalism/mlp.hpp"
#include "formalism/pipeline.hpp"
#include "formalism/predictions.hpp"
#include "formalism/split.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace formalism {
namespace {

enum class OutputFormat { kTable, kCsv, kRecord };

// Rows of typed cells printed as a tab-separated table, CSV, or one JSON
// record.
struct Table {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;

  void add(std::vector<ordered_json> row) { rows.push_back(std::move(row)); }
};

std::string plain(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "NA";
  if (v.is_number_float()) return fmt::format("{}", v.get<double>());
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(std::ostream& out, const Table& t, OutputFormat format) {
  if (format == OutputFormat::kRecord) {
    ordered_json j;
    j["format_version"] = 1;
    j["kind"] = t.kind;
    auto rows = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json o;
      for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c]] = r[c];
      rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    out << j.dump() << '\n';
    return;
  }
  const char sep = format == OutputFormat::kCsv ? ',' : '\t';
  auto cellf = [&](const std::string& s) {
    return format == OutputFormat::kCsv ? csv_quote(s) : s;
  };
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    out << (c ? std::string(1, sep) : "") << cellf(t.columns[c]);
  }
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out << (c ? std::string(1, sep) : "") << cellf(plain(r[c]));
    }
    out << '\n';
  }
}

ordered_json pct(double fraction) { return fmt::format("{:.1f}", percent(fraction)); }

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ValidationError(fmt::format("cannot write '{}'", p.string()));
  return f;
}

// Optional split selection shared by several subcommands.
struct PartSelection {
  std::string split;
  std::string part = "test";

  Corpus apply(const Corpus& c) const {
    if (split.empty()) return c;
    auto p = parse_split_part(part);
    if (!p) throw ValidationError(fmt::format("unknown split part '{}'", part));
    return select_part(c, load_split(split), *p);
  }
};

void add_part_options(CLI::App* cmd, PartSelection& sel) {
  cmd->add_option("--split", sel.split, "Split CSV; restricts to one part")
      ->check(CLI::ExistingFile);
  cmd->add_option("--part", sel.part, "train | validation | test")
      ->check(CLI::IsMember({"train", "validation", "test"}));
}

// ---- subcommands -----------------------------------------------------------

struct Common {
  OutputFormat format = OutputFormat::kTable;
};

void cmd_validate(const Common& common, const std::string& path) {
  auto corpus = load_corpus(path);
  validate(corpus);
  auto s = corpus_stats(corpus);
  Table t{"validate", {"status", "documents", "paragraphs", "arguments"}, {}};
  t.add({"ok", s.n_documents, s.n_paragraphs, s.n_arguments});
  emit(std::cout, t, common.format);
}

void cmd_stats(const Common& common, const std::string& path) {
  auto corpus = load_corpus(path);
  auto s = corpus_stats(corpus);
  Table t{"stats", {"metric", "value"}, {}};
  t.add({"documents", s.n_documents});
  t.add({"paragraphs", s.n_paragraphs});
  t.add({"arguments", s.n_arguments});
  t.add({"paragraphs_0_args", s.paragraphs_with_0});
  t.add({"paragraphs_1_arg", s.paragraphs_with_1_arg});
  t.add({"paragraphs_2plus_args", s.paragraphs_with_2plus});
  t.add({"doc_tokens_min", s.token_min});
  t.add({"doc_tokens_max", s.token_max});
  t.add({"doc_tokens_mean", s.token_mean});
  t.add({"args_per_doc_mean", s.args_per_doc_mean});
  t.add({"args_per_doc_max", s.args_per_doc_max});
  t.add({"docs_zero_args", s.docs_with_zero_args});
  auto dist = argument_distribution(corpus);
  for (auto type : kAllArgumentTypes) {
    t.add({fmt::format("frequency_{}", code_of(type)),
           dist.overall.frequency[index_of(type)]});
    t.add({fmt::format("existence_{}", code_of(type)),
           dist.overall.existence[index_of(type)]});
  }
  emit(std::cout, t, common.format);
}

void cmd_split(const Common& common, const std::string& path,
               const std::vector<double>& ratios, std::uint64_t seed,
               const std::string& out) {
  if (ratios.size() != 3) throw ValidationError("--ratios takes three values");
  auto corpus = load_corpus(path);
  auto split = stratified_split(corpus, {ratios[0], ratios[1], ratios[2]}, seed);
  if (out.empty()) {
    write_split(std::cout, split);
    return;
  }
  save_split(out, split);
  Table t{"split", {"part", "documents"}, {}};
  for (auto p : kAllSplitParts) t.add({std::string(to_string(p)), split.count(p)});
  emit(std::cout, t, common.format);
}

void cmd_iaa(const Common& common, const std::string& a_path,
             const std::string& b_path) {
  auto a = load_corpus(a_path);
  auto b = load_corpus(b_path);
  Table t{"iaa", {"metric", "category", "value", "units"}, {}};
  for (const auto& r : per_type_agreement(a, b)) {
    t.add({"krippendorff_alpha", std::string(code_of(r.type)), r.alpha,
           r.pairable_units});
  }
  auto h = holistic_agreement(a, b);
  t.add({"cohen_kappa", "holistic", h.kappa, h.units});
  emit(std::cout, t, common.format);
}

void print_report(const Common& common, const TaskReport& report, Task task) {
  if (const auto* b = std::get_if<BinaryReport>(&report)) {
    const char* pos = task == Task::kPresence ? "present" : "non_formalistic";
    const char* neg = task == Task::kPresence ? "absent" : "formalistic";
    Table t{"eval", {"class", "precision", "recall", "f1", "precision_raw",
                     "recall_raw", "f1_raw"}, {}};
    auto shown = present(*b);
    auto one = [](double v) { return ordered_json(fmt::format("{:.1f}", v)); };
    auto row = [&](const char* name, const PresentedClass& c, double p, double r, double f) {
      t.add({name, one(c.precision), one(c.recall), one(c.f1), p, r, f});
    };
    row(pos, shown.positive, b->positive.precision, b->positive.recall, b->positive.f1);
    row(neg, shown.negative, b->negative.precision, b->negative.recall, b->negative.f1);
    row("macro", shown.macro, b->macro_precision, b->macro_recall, b->macro_f1);
    emit(std::cout, t, common.format);
    return;
  }
  const auto& m = std::get<EvaluationReport>(report);
  Table t{"eval", {"label", "f1_pos", "f1_neg", "macro_f1", "tp", "fp", "fn", "tn"}, {}};
  for (const auto& l : m.per_label) {
    t.add({std::string(code_of(l.label)), pct(l.f1_pos), pct(l.f1_neg),
           pct(l.macro_f1), l.counts.tp, l.counts.fp, l.counts.fn, l.counts.tn});
  }
  t.add({"all", pct(m.mean_f1_pos), pct(m.mean_f1_neg), pct(m.macro_all), nullptr,
         nullptr, nullptr, nullptr});
  emit(std::cout, t, common.format);
}

struct BaselineArgs {
  std::string kind = "majority";
  int task = 3;
  std::string corpus;
  std::string train;
  PartSelection sel;
  std::string mode = "uniform";
  std::uint64_t seed = 0;
  std::string lexicon;
  std::string out;
};

void cmd_baseline(const Common& common, const BaselineArgs& a) {
  auto task = parse_task(a.task);
  auto kind = parse_baseline_kind(a.kind);
  auto corpus = load_corpus(a.corpus);
  Corpus train = a.train.empty() ? corpus : load_corpus(a.train);
  if (!a.sel.split.empty() && a.train.empty()) {
    train = select_part(corpus, load_split(a.sel.split), SplitPart::kTrain);
  }
  auto target = a.sel.apply(corpus);
  BaselineOptions opt;
  opt.mode = *parse_random_mode(a.mode);
  opt.seed = a.seed;
  std::optional<TriggerLexicon> lex;
  if (*kind == BaselineKind::kTrigger) {
    if (a.lexicon.empty()) throw ValidationError("--lexicon is required for trigger");
    lex = load_lexicon(a.lexicon);
    opt.lexicon = &*lex;
  }
  auto pred = run_baseline(*kind, *task, train, target, opt);
  if (a.out.empty()) {
    write_predictions(std::cout, pred);
    return;
  }
  save_predictions(a.out, pred);
  print_report(common, evaluate(target, pred), *task);
}

struct TrainArgs {
  std::string corpus;
  std::string split;
  std::string loss = "bce";
  std::string optimizer = "adam";
  std::string monitor = "loss";
  std::uint64_t seed = 0;
  std::size_t max_epochs = 200;
  std::size_t patience = 3;
  std::string out;
};

void cmd_train(const Common& common, const TrainArgs& a) {
  auto corpus = load_corpus(a.corpus);
  auto split = load_split(a.split);
  auto train = labeled_features(select_part(corpus, split, SplitPart::kTrain));
  auto val = labeled_features(select_part(corpus, split, SplitPart::kValidation));
  MlpConfig cfg;
  cfg.loss = *parse_loss_kind(a.loss);
  cfg.optimizer = a.optimizer == "sgd" ? OptimizerKind::kSgd : OptimizerKind::kAdam;
  cfg.monitor = a.monitor == "macro_f1" ? EarlyStopMonitor::kValidationMacroF1
                                        : EarlyStopMonitor::kValidationLoss;
  cfg.seed = a.seed;
  cfg.max_epochs = a.max_epochs;
  cfg.early_stopping_patience = a.patience;
  auto model = train_mlp(train, val, cfg);
  save_model(a.out, model);
  Table t{"train-mlp", {"epoch", "train_loss", "validation_loss",
                        "validation_macro_f1", "best"}, {}};
  for (const auto& h : model.history()) {
    t.add({h.epoch, h.train_loss, h.validation_loss, h.validation_macro_f1,
           h.epoch == model.best_epoch()});
  }
  emit(std::cout, t, common.format);
}

struct PredictArgs {
  std::string model;
  std::string features;
  std::string corpus;
  PartSelection sel;
  std::string out;
};

void cmd_predict(const Common& common, const PredictArgs& a) {
  auto model = load_model(a.model);
  std::vector<NamedFeatures> rows;
  if (!a.features.empty()) {
    std::ifstream in(a.features);
    if (!in) throw ValidationError(fmt::format("cannot open '{}'", a.features));
    rows = read_features_csv(in);
  } else if (!a.corpus.empty()) {
    for (const auto& d : a.sel.apply(load_corpus(a.corpus)).documents) {
      rows.push_back({d.doc_id, extract_features(d)});
    }
  } else {
    throw ValidationError("give --features or --corpus");
  }
  Table t{"predict-mlp", {"doc_id", "probability", "label"}, {}};
  Predictions pred;
  pred.task = Task::kHolistic;
  for (const auto& r : rows) {
    double p = model.predict(r.x);
    auto label = p >= 0.5 ? HolisticLabel::kNonFormalistic : HolisticLabel::kFormalistic;
    t.add({r.doc_id, p, std::string(to_string(label))});
    pred.documents.push_back({r.doc_id, label});
  }
  if (!a.out.empty()) save_predictions(a.out, pred);
  emit(std::cout, t, common.format);
}

struct ExplainArgs {
  std::string model;
  std::string corpus;
  PartSelection sel;
  std::string reference = "train-mean";
  std::string attributions;
};

void cmd_explain(const Common& common, const ExplainArgs& a) {
  auto model = load_model(a.model);
  auto corpus = load_corpus(a.corpus);
  auto target = a.sel.apply(corpus);
  std::vector<FeatureVector> xs;
  for (const auto& d : target.documents) xs.push_back(extract_features(d));

  FeatureVector reference;
  if (a.reference == "train-mean") {
    // The scaler stores the training mean.
    reference.values = model.scaler().mean();
  } else if (a.reference == "data-mean") {
    reference = mean_features(xs);
  }
  auto summary = shap_summary(model, xs, reference);

  if (!a.attributions.empty()) {
    auto f = open_out(a.attributions);
    f << "doc_id,base_value,output";
    for (auto n : feature_names()) f << ",phi_" << n;
    f << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& at = summary.attributions[i];
      f << csv_quote(target.documents[i].doc_id)
        << fmt::format(",{},{}", at.base_value, at.instance_output);
      for (double v : at.phi) f << fmt::format(",{}", v);
      f << '\n';
    }
  }
  Table t{"explain", {"rank", "feature", "mean_abs_phi", "mean_phi",
                      "value_correlation", "sign"}, {}};
  std::size_t rank = 1;
  for (const auto& imp : summary.ranking) {
    t.add({rank++, std::string(feature_names()[imp.feature]), imp.mean_abs_phi,
           imp.mean_phi, imp.value_correlation,
           imp.sign > 0 ? "+" : (imp.sign < 0 ? "-" : "0")});
  }
  emit(std::cout, t, common.format);
}

struct PipelineArgs {
  std::string config;
  std::string in;
  std::string out;
  std::string corpus_out;
  bool no_filter = false;
  bool timing = false;
  std::optional<std::uint64_t> seed;
};

void cmd_pipeline_run(const Common& common, const PipelineArgs& a) {
  auto config = load_pipeline_config(a.config);
  if (a.no_filter) config.filtering_enabled = false;
  if (a.seed) {
    config.stage1.seed = *a.seed;
    config.stage2.seed = *a.seed;
  }
  auto corpus = load_corpus(a.in);
  auto output = run_pipeline(corpus, config);
  {
    auto f = open_out(a.out);
    write_results(f, output.results, a.timing ? &output.timing : nullptr);
  }
  if (!a.corpus_out.empty()) save_corpus(a.corpus_out, predicted_corpus(corpus, output.results));
  std::size_t nf = 0;
  std::size_t retained = 0;
  std::size_t paragraphs = 0;
  for (const auto& r : output.results) {
    nf += r.label == HolisticLabel::kNonFormalistic ? 1 : 0;
    for (bool b : r.retained) retained += b ? 1 : 0;
    paragraphs += r.retained.size();
  }
  Table t{"pipeline", {"documents", "non_formalistic", "paragraphs", "retained"}, {}};
  t.add({output.results.size(), nf, paragraphs, retained});
  emit(std::cout, t, common.format);
}

void cmd_gold_answers(const std::string& in, const std::string& out) {
  auto corpus = load_corpus(in);
  if (out.empty()) {
    write_gold_answers(std::cout, corpus);
  } else {
    auto f = open_out(out);
    write_gold_answers(f, corpus);
  }
}

struct ReportArgs {
  std::string corpus;
  std::optional<int> from;
  std::optional<int> to;
  std::string out;
  int bucket = 1;
};

void cmd_report(const Common& common, const ReportArgs& a) {
  auto corpus = load_corpus(a.corpus);
  YearRange range{a.from, a.to};
  write_report(corpus, range, a.out, a.bucket);
  Table t{"report", {"file"}, {}};
  for (const char* f : {"distribution.csv", "holistic.csv", "trends.csv", "shares.csv"}) {
    t.add({(fs::path(a.out) / f).string()});
  }
  emit(std::cout, t, common.format);
}

int run(int argc, char** argv) {
  CLI::App app{"Legal argument corpus toolkit and formalism pipeline", "formalism"};
  app.require_subcommand(1);
  app.set_config("--config-file", "", "INI/TOML file with flag values");
  Common common;
  const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::kTable},
      {"csv", OutputFormat::kCsv},
      {"record", OutputFormat::kRecord}};
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", common.format, "table | csv | record")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  std::string corpus_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a corpus file");
  validate_cmd->add_option("--corpus", corpus_path)->required();
  add_format(validate_cmd);

  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("--corpus", corpus_path)->required();
  add_format(stats_cmd);

  std::vector<double> ratios{0.7, 0.2, 0.1};
  std::uint64_t seed = 0;
  std::string out;
  auto* split_cmd = app.add_subcommand("split", "Stratified train/validation/test split");
  split_cmd->add_option("--corpus", corpus_path)->required();
  split_cmd->add_option("--ratios", ratios, "train validation test")->expected(3);
  split_cmd->add_option("--seed", seed);
  split_cmd->add_option("--out", out, "Split CSV (default: stdout)");
  add_format(split_cmd);

  std::string a_path;
  std::string b_path;
  auto* iaa_cmd = app.add_subcommand("iaa", "Inter-annotator agreement");
  iaa_cmd->add_option("--a", a_path, "First annotator's corpus")->required();
  iaa_cmd->add_option("--b", b_path, "Second annotator's corpus")->required();
  add_format(iaa_cmd);

  BaselineArgs base;
  auto* base_cmd = app.add_subcommand("baseline", "Majority, random or trigger baseline");
  base_cmd->add_option("--kind", base.kind)
      ->check(CLI::IsMember({"majority", "random", "trigger"}));
  base_cmd->add_option("--task", base.task)->check(CLI::Range(1, 3));
  base_cmd->add_option("--corpus", base.corpus, "Corpus to predict")->required();
  base_cmd->add_option("--train", base.train, "Training corpus (default: split train part)");
  add_part_options(base_cmd, base.sel);
  base_cmd->add_option("--mode", base.mode)->check(CLI::IsMember({"uniform", "marginal"}));
  base_cmd->add_option("--seed", base.seed);
  base_cmd->add_option("--lexicon", base.lexicon);
  base_cmd->add_option("--out", base.out, "Predictions file (default: stdout)");
  add_format(base_cmd);

  int task = 3;
  std::string gold;
  std::string pred;
  PartSelection eval_sel;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against gold");
  eval_cmd->add_option("--task", task)->check(CLI::Range(1, 3))->required();
  eval_cmd->add_option("--gold", gold)->required();
  eval_cmd->add_option("--pred", pred)->required();
  add_part_options(eval_cmd, eval_sel);
  add_format(eval_cmd);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train-mlp", "Train the document classifier");
  train_cmd->add_option("--corpus", train.corpus)->required();
  train_cmd->add_option("--split", train.split)->required();
  train_cmd->add_option("--loss", train.loss)
      ->check(CLI::IsMember({"bce", "weighted_bce", "asymmetric"}));
  train_cmd->add_option("--optimizer", train.optimizer)->check(CLI::IsMember({"adam", "sgd"}));
  train_cmd->add_option("--monitor", train.monitor)->check(CLI::IsMember({"loss", "macro_f1"}));
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--max-epochs", train.max_epochs);
  train_cmd->add_option("--patience", train.patience);
  train_cmd->add_option("--out", train.out)->required();
  add_format(train_cmd);

  PredictArgs predict;
  auto* predict_cmd = app.add_subcommand("predict-mlp", "Apply a trained classifier");
  predict_cmd->add_option("--model", predict.model)->required();
  predict_cmd->add_option("--features", predict.features, "Features CSV");
  predict_cmd->add_option("--corpus", predict.corpus, "Corpus to featurize");
  add_part_options(predict_cmd, predict.sel);
  predict_cmd->add_option("--out", predict.out, "Also write task-3 predictions");
  add_format(predict_cmd);

  ExplainArgs explain;
  auto* explain_cmd = app.add_subcommand("explain", "Exact Shapley attributions");
  explain_cmd->add_option("--model", explain.model)->required();
  explain_cmd->add_option("--corpus", explain.corpus)->required();
  add_part_options(explain_cmd, explain.sel);
  explain_cmd->add_option("--reference", explain.reference)
      ->check(CLI::IsMember({"train-mean", "data-mean", "zero"}));
  explain_cmd->add_option("--attributions", explain.attributions,
                          "Per-instance attributions CSV");
  add_format(explain_cmd);

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Three-stage formalism pipeline");
  pipe_cmd->require_subcommand(1);
  auto* run_cmd = pipe_cmd->add_subcommand("run", "Run the pipeline on a corpus");
  run_cmd->add_option("--config", pipe.config)->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--in", pipe.in)->required();
  run_cmd->add_option("--out", pipe.out, "Results file")->required();
  run_cmd->add_option("--corpus-out", pipe.corpus_out, "Corpus with predicted labels");
  run_cmd->add_flag("--no-filter", pipe.no_filter, "Skip stage 1");
  run_cmd->add_flag("--timing", pipe.timing, "Record stage timings");
  run_cmd->add_option("--seed", pipe.seed, "Seed for random backends");
  add_format(run_cmd);
  std::string gold_in;
  std::string gold_out;
  auto* gold_cmd =
      pipe_cmd->add_subcommand("gold-answers", "Replay answers from gold annotations");
  gold_cmd->add_option("--in", gold_in)->required();
  gold_cmd->add_option("--out", gold_out);

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Write analysis CSV tables");
  report_cmd->add_option("--corpus", report.corpus)->required();
  report_cmd->add_option("--from", report.from, "First year (inclusive)");
  report_cmd->add_option("--to", report.to, "Last year (inclusive)");
  report_cmd->add_option("--bucket", report.bucket, "Years per trend bucket")
      ->check(CLI::PositiveNumber);
  report_cmd->add_option("--out", report.out, "Output directory")->required();
  add_format(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  if (*validate_cmd) {
    cmd_validate(common, corpus_path);
  } else if (*stats_cmd) {
    cmd_stats(common, corpus_path);
  } else if (*split_cmd) {
    cmd_split(common, corpus_path, ratios, seed, out);
  } else if (*iaa_cmd) {
    cmd_iaa(common, a_path, b_path);
  } else if (*base_cmd) {
    cmd_baseline(common, base);
  } else if (*eval_cmd) {
    auto t = *parse_task(task);
    auto gold_corpus = eval_sel.apply(load_corpus(gold));
    print_report(common, evaluate(gold_corpus, load_predictions(pred, t)), t);
  } else if (*train_cmd) {
    cmd_train(common, train);
  } else if (*predict_cmd) {
    cmd_predict(common, predict);
  } else if (*explain_cmd) {
    cmd_explain(common, explain);
  } else if (*run_cmd) {
    cmd_pipeline_run(common, pipe);
  } else if (*gold_cmd) {
    cmd_gold_answers(gold_in, gold_out);
  } else if (*report_cmd) {
    cmd_report(common, report);
  }
  return 0;
}

}  // namespace
}  // namespace formalism

int main(int argc, char** argv) {
  try {
    return formalism::run(argc, argv);
  } catch (const formalism::ProtocolError& e) {
    std::cerr << "formalism: backend error: " << e.what() << '\n';
    return 2;
  } catch (const formalism::ValidationError& e) {
    std::cerr << "formalism: " << e.what() << '\n';
    return 1;
  } catch (const formalism::DivergenceError& e) {
    std::cerr << "formalism: training diverged: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "formalism: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "formalism: " << e.what() << '\n';
    return 1;
  }
}
