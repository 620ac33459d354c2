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

#include "formalism/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "transport.hpp"

namespace formalism {

using nlohmann::json;

std::string_view to_string(StageTask t) {
  return t == StageTask::kPresence ? "presence" : "types";
}

namespace {

constexpr std::array<std::pair<BackendKind, std::string_view>, 5> kBackendNames{{
    {BackendKind::kBuiltinMajority, "builtin_majority"},
    {BackendKind::kBuiltinRandom, "builtin_random"},
    {BackendKind::kBuiltinTrigger, "builtin_trigger"},
    {BackendKind::kExternal, "external"},
    {BackendKind::kReplay, "replay"},
}};

bool valid_prob(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

std::string truncate(std::string_view s) {
  constexpr std::size_t kMax = 200;
  if (s.size() <= kMax) return std::string(s);
  return std::string(s.substr(0, kMax)) + "...";
}

}  // namespace

std::string_view to_string(BackendKind k) {
  for (const auto& [kind, name] : kBackendNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<BackendKind> parse_backend_kind(std::string_view s) {
  for (const auto& [kind, name] : kBackendNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

void StageBackend::validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValidationError("backend threshold must lie in (0,1)");
  }
  switch (kind) {
    case BackendKind::kBuiltinRandom:
      if (random_mode == RandomMode::kMarginal && !train_corpus) {
        throw ValidationError("marginal random backend needs train_corpus");
      }
      break;
    case BackendKind::kBuiltinTrigger:
      if (lexicon.empty()) throw ValidationError("trigger backend needs lexicon");
      break;
    case BackendKind::kExternal:
      if (command.empty() == endpoint_env.empty()) {
        throw ValidationError(
            "external backend needs exactly one of command or endpoint_env");
      }
      if (!(timeout_seconds > 0.0)) {
        throw ValidationError("external backend timeout must be positive");
      }
      break;
    case BackendKind::kReplay:
      if (answers.empty()) throw ValidationError("replay backend needs answers");
      break;
    case BackendKind::kBuiltinMajority:
      break;
  }
}

void PipelineConfig::validate() const {
  if (batch_size == 0) throw ValidationError("batch_size must be positive");
  if (filtering_enabled) stage1.validate();
  stage2.validate();
}

StageBackend stage_backend_from_json(const json& j,
                                     const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ValidationError("stage backend must be an object");
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  StageBackend b;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "kind") {
        auto k = parse_backend_kind(value.get<std::string>());
        if (!k) {
          throw ValidationError(fmt::format("unknown backend kind '{}'",
                                            value.get<std::string>()));
        }
        b.kind = *k;
      } else if (key == "threshold") {
        b.threshold = value.get<double>();
      } else if (key == "train_corpus") {
        b.train_corpus = resolve(value.get<std::string>());
      } else if (key == "random_mode") {
        auto m = parse_random_mode(value.get<std::string>());
        if (!m) throw ValidationError("random_mode must be uniform or marginal");
        b.random_mode = *m;
      } else if (key == "seed") {
        b.seed = value.get<std::uint64_t>();
      } else if (key == "lexicon") {
        b.lexicon = resolve(value.get<std::string>());
      } else if (key == "command") {
        b.command = value.get<std::string>();
      } else if (key == "endpoint_env") {
        b.endpoint_env = value.get<std::string>();
      } else if (key == "timeout_seconds") {
        b.timeout_seconds = value.get<double>();
      } else if (key == "answers") {
        b.answers = resolve(value.get<std::string>());
      } else {
        throw ValidationError(fmt::format("unknown backend field '{}'", key));
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("stage backend: {}", e.what()));
  }
  if (!j.contains("kind")) throw ValidationError("stage backend needs a kind");
  b.validate();
  return b;
}

PipelineConfig read_pipeline_config(std::istream& in,
                                    const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("pipeline config: {}", e.what()));
  }
  if (!j.is_object()) throw ValidationError("pipeline config must be an object");
  if (j.value("format_version", 0) != kPipelineFormatVersion) {
    throw ValidationError("pipeline config: unsupported or missing format_version");
  }
  PipelineConfig c;
  bool have_stage2 = false;
  bool have_stage3 = false;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "format_version") {
        continue;
      } else if (key == "filtering_enabled") {
        c.filtering_enabled = value.get<bool>();
      } else if (key == "stage1") {
        c.stage1 = stage_backend_from_json(value, base_dir);
      } else if (key == "stage2") {
        c.stage2 = stage_backend_from_json(value, base_dir);
        have_stage2 = true;
      } else if (key == "stage3") {
        std::filesystem::path p(value.get<std::string>());
        c.stage3_model = p.is_absolute() ? p : base_dir / p;
        have_stage3 = true;
      } else if (key == "batch_size") {
        c.batch_size = value.get<std::size_t>();
      } else if (key == "length_over_retained") {
        c.length_over_retained = value.get<bool>();
      } else {
        throw ValidationError(fmt::format("unknown pipeline config field '{}'", key));
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("pipeline config: {}", e.what()));
  }
  if (c.filtering_enabled && !j.contains("stage1")) {
    throw ValidationError("pipeline config: filtering needs stage1");
  }
  if (!have_stage2 || !have_stage3) {
    throw ValidationError("pipeline config needs stage2 and stage3");
  }
  c.validate();
  return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError(fmt::format("cannot open config '{}'", path.string()));
  }
  return read_pipeline_config(in, path.parent_path());
}

// ---- wire format ---------------------------------------------------------

std::string paragraph_request_id(std::size_t doc, std::size_t para) {
  return fmt::format("d{}:p{}", doc, para);
}

std::string format_request(const StageRequest& r) {
  json j = json::object();
  j["id"] = r.id;
  j["task"] = std::string(to_string(r.task));
  j["text"] = r.text;
  // Keys are emitted sorted; replace invalid UTF-8 instead of throwing.
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string format_response(const StageResponse& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  if (r.presence_prob) j["presence_prob"] = *r.presence_prob;
  if (r.type_probs) {
    nlohmann::ordered_json probs = nlohmann::ordered_json::object();
    for (auto t : kAllArgumentTypes) {
      probs[std::string(code_of(t))] = (*r.type_probs)[index_of(t)];
    }
    j["type_probs"] = std::move(probs);
  }
  return j.dump();
}

StageResponse parse_response(std::string_view line) {
  auto fail = [&](std::string_view why) -> ProtocolError {
    return ProtocolError(fmt::format("malformed backend response ({}): {}", why,
                                     truncate(line)));
  };
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw fail("not a JSON object");
  StageResponse r;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) throw fail("missing string id");
  r.id = id->get<std::string>();
  if (auto p = j.find("presence_prob"); p != j.end()) {
    if (!p->is_number()) throw fail("presence_prob is not a number");
    r.presence_prob = p->get<double>();
  }
  if (auto tp = j.find("type_probs"); tp != j.end()) {
    if (!tp->is_object()) throw fail("type_probs is not an object");
    std::array<double, kNumArgumentTypes> probs{};
    ArgumentSet seen;
    for (const auto& [code, value] : tp->items()) {
      auto t = parse_argument_type(code);
      if (!t) throw fail(fmt::format("unknown type code '{}'", code));
      if (!value.is_number()) throw fail("type probability is not a number");
      probs[index_of(*t)] = value.get<double>();
      seen.insert(*t);
    }
    if (seen.size() != kNumArgumentTypes) throw fail("type_probs lacks some codes");
    r.type_probs = probs;
  }
  return r;
}

std::vector<StageResponse> match_responses(std::span<const StageRequest> requests,
                                           std::vector<StageResponse> responses) {
  std::unordered_map<std::string_view, std::size_t> slot;
  slot.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!slot.emplace(requests[i].id, i).second) {
      throw ProtocolError(fmt::format("duplicate request id '{}'", requests[i].id));
    }
  }
  std::vector<std::optional<StageResponse>> ordered(requests.size());
  for (auto& r : responses) {
    auto it = slot.find(r.id);
    if (it == slot.end()) {
      throw ProtocolError(fmt::format("response for unknown id: {}",
                                      truncate(format_response(r))));
    }
    auto& dst = ordered[it->second];
    if (dst) {
      throw ProtocolError(fmt::format("duplicate response: {}",
                                      truncate(format_response(r))));
    }
    const auto& req = requests[it->second];
    if (req.task == StageTask::kPresence) {
      if (!r.presence_prob || !valid_prob(*r.presence_prob)) {
        throw ProtocolError(fmt::format("bad presence_prob: {}",
                                        truncate(format_response(r))));
      }
    } else {
      if (!r.type_probs) {
        throw ProtocolError(fmt::format("missing type_probs: {}",
                                        truncate(format_response(r))));
      }
      for (double p : *r.type_probs) {
        if (!valid_prob(p)) {
          throw ProtocolError(fmt::format("bad type probability: {}",
                                          truncate(format_response(r))));
        }
      }
    }
    dst = std::move(r);
  }
  std::vector<StageResponse> out;
  out.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!ordered[i]) {
      throw ProtocolError(fmt::format("no response for id '{}'", requests[i].id));
    }
    out.push_back(std::move(*ordered[i]));
  }
  return out;
}

// ---- backends ------------------------------------------------------------

namespace {

std::array<double, kNumArgumentTypes> indicator(ArgumentSet s) {
  std::array<double, kNumArgumentTypes> p{};
  for (auto t : kAllArgumentTypes) p[index_of(t)] = s.contains(t) ? 1.0 : 0.0;
  return p;
}

StageResponse answer_from(const StageRequest& req, bool present, ArgumentSet types) {
  StageResponse r;
  r.id = req.id;
  if (req.task == StageTask::kPresence) {
    r.presence_prob = present ? 1.0 : 0.0;
  } else {
    r.type_probs = indicator(types);
  }
  return r;
}

// Paragraph-level gold labels of a training corpus.
struct TrainLabels {
  std::unique_ptr<bool[]> presence_buf;
  std::vector<ArgumentSet> types;

  std::span<const bool> presence() const {
    return {presence_buf.get(), types.size()};
  }
};

TrainLabels train_labels(const std::optional<std::filesystem::path>& path) {
  TrainLabels out;
  if (!path) return out;
  auto corpus = load_corpus(*path);
  for (const auto& d : corpus.documents) {
    for (const auto& p : d.paragraphs) out.types.push_back(p.argument_types);
  }
  out.presence_buf = std::make_unique<bool[]>(out.types.size());
  for (std::size_t i = 0; i < out.types.size(); ++i) {
    out.presence_buf[i] = !out.types[i].empty();
  }
  return out;
}

class MajorityBackend final : public Backend {
 public:
  explicit MajorityBackend(const StageBackend& spec) {
    auto labels = train_labels(spec.train_corpus);
    if (labels.types.empty()) return;
    present_ = majority_binary(labels.presence());
    types_ = majority_set(labels.types);
  }

  std::vector<StageResponse> answer(std::span<const StageRequest> batch) override {
    std::vector<StageResponse> out;
    out.reserve(batch.size());
    for (const auto& req : batch) out.push_back(answer_from(req, present_, types_));
    return out;
  }

 private:
  bool present_ = false;
  ArgumentSet types_;
};

class RandomBackend final : public Backend {
 public:
  explicit RandomBackend(const StageBackend& spec)
      : RandomBackend(train_labels(spec.train_corpus), spec) {}

  std::vector<StageResponse> answer(std::span<const StageRequest> batch) override {
    std::vector<StageResponse> out;
    out.reserve(batch.size());
    for (const auto& req : batch) {
      out.push_back(answer_from(req, presence_.predict(req.instance),
                                types_.predict(req.instance)));
    }
    return out;
  }

 private:
  RandomBackend(const TrainLabels& labels, const StageBackend& spec)
      : presence_(labels.presence(), spec.random_mode, spec.seed),
        types_(labels.types, spec.random_mode, spec.seed) {}

  RandomBinaryPredictor presence_;
  RandomSetPredictor types_;
};

class TriggerBackend final : public Backend {
 public:
  explicit TriggerBackend(const StageBackend& spec)
      : lexicon_(load_lexicon(spec.lexicon)) {}

  std::vector<StageResponse> answer(std::span<const StageRequest> batch) override {
    std::vector<StageResponse> out;
    out.reserve(batch.size());
    for (const auto& req : batch) {
      auto types = lexicon_.classify(req.text);
      out.push_back(answer_from(req, !types.empty(), types));
    }
    return out;
  }

 private:
  TriggerLexicon lexicon_;
};

class ExternalBackend final : public Backend {
 public:
  explicit ExternalBackend(const StageBackend& spec) : spec_(spec) {
    if (!spec.endpoint_env.empty()) {
      const char* url = std::getenv(spec.endpoint_env.c_str());
      if (url == nullptr || *url == '\0') {
        throw ProtocolError(fmt::format("environment variable {} is not set",
                                        spec.endpoint_env));
      }
      url_ = url;
    }
  }

  std::vector<StageResponse> answer(std::span<const StageRequest> batch) override {
    std::string body;
    for (const auto& req : batch) {
      body += format_request(req);
      body += '\n';
    }
    auto lines = url_.empty()
                     ? run_subprocess_batch(spec_.command, body, spec_.timeout_seconds)
                     : detail::run_http_batch(url_, body, spec_.timeout_seconds);
    std::vector<StageResponse> out;
    out.reserve(lines.size());
    for (const auto& line : lines) out.push_back(parse_response(line));
    return out;
  }

 private:
  StageBackend spec_;
  std::string url_;
};

class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(const StageBackend& spec) {
    std::ifstream in(spec.answers);
    if (!in) {
      throw ValidationError(
          fmt::format("cannot open answers '{}'", spec.answers.string()));
    }
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto r = parse_response(line);
      auto id = r.id;
      if (!answers_.emplace(std::move(id), std::move(r)).second) {
        throw ProtocolError(fmt::format("answers repeat id: {}", truncate(line)));
      }
    }
  }

  std::vector<StageResponse> answer(std::span<const StageRequest> batch) override {
    std::vector<StageResponse> out;
    out.reserve(batch.size());
    for (const auto& req : batch) {
      auto it = answers_.find(req.id);
      if (it != answers_.end()) out.push_back(it->second);
    }
    return out;
  }

 private:
  std::unordered_map<std::string, StageResponse> answers_;
};

std::vector<StageResponse> answer_all(Backend& backend,
                                      std::span<const StageRequest> requests,
                                      std::size_t batch_size) {
  std::vector<StageResponse> out;
  out.reserve(requests.size());
  for (std::size_t start = 0; start < requests.size(); start += batch_size) {
    auto batch = requests.subspan(start, std::min(batch_size, requests.size() - start));
    auto matched = match_responses(batch, backend.answer(batch));
    for (auto& r : matched) out.push_back(std::move(r));
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::unique_ptr<Backend> make_backend(const StageBackend& spec) {
  spec.validate();
  switch (spec.kind) {
    case BackendKind::kBuiltinMajority:
      return std::make_unique<MajorityBackend>(spec);
    case BackendKind::kBuiltinRandom:
      return std::make_unique<RandomBackend>(spec);
    case BackendKind::kBuiltinTrigger:
      return std::make_unique<TriggerBackend>(spec);
    case BackendKind::kExternal:
      return std::make_unique<ExternalBackend>(spec);
    case BackendKind::kReplay:
      return std::make_unique<ReplayBackend>(spec);
  }
  throw ValidationError("unknown backend kind");
}

std::vector<StageResponse> external_classify_batch(
    const StageBackend& backend, std::span<const StageRequest> requests) {
  if (backend.kind != BackendKind::kExternal) {
    throw ValidationError("external_classify_batch needs an external backend");
  }
  ExternalBackend b(backend);
  return match_responses(requests, b.answer(requests));
}

// ---- pipeline ------------------------------------------------------------

PipelineOutput run_pipeline(const Corpus& corpus, const PipelineConfig& config,
                            const MlpModel& model, Backend* stage1,
                            Backend& stage2) {
  if (config.batch_size == 0) throw ValidationError("batch_size must be positive");
  using Clock = std::chrono::steady_clock;
  PipelineOutput output;
  const auto& docs = corpus.documents;
  output.results.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    output.results[d].doc_id = docs[d].doc_id;
    output.results[d].retained.assign(docs[d].paragraphs.size(), true);
    output.results[d].types.assign(docs[d].paragraphs.size(), ArgumentSet{});
  }

  auto t0 = Clock::now();
  if (config.filtering_enabled) {
    if (stage1 == nullptr) throw ValidationError("filtering needs a stage-1 backend");
    std::vector<StageRequest> requests;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t p = 0; p < docs[d].paragraphs.size(); ++p) {
        requests.push_back({paragraph_request_id(d, p), StageTask::kPresence,
                            docs[d].paragraphs[p].text, requests.size()});
      }
    }
    auto answers = answer_all(*stage1, requests, config.batch_size);
    std::size_t k = 0;
    for (auto& r : output.results) {
      for (std::size_t p = 0; p < r.retained.size(); ++p, ++k) {
        r.retained[p] = *answers[k].presence_prob >= config.stage1.threshold;
      }
    }
    output.timing.stage1_requests = requests.size();
  }
  output.timing.stage1_seconds = seconds_since(t0);

  t0 = Clock::now();
  {
    std::vector<StageRequest> requests;
    std::vector<std::pair<std::size_t, std::size_t>> where;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t p = 0; p < docs[d].paragraphs.size(); ++p) {
        if (!output.results[d].retained[p]) continue;
        requests.push_back({paragraph_request_id(d, p), StageTask::kTypes,
                            docs[d].paragraphs[p].text, requests.size()});
        where.emplace_back(d, p);
      }
    }
    auto answers = answer_all(stage2, requests, config.batch_size);
    for (std::size_t k = 0; k < answers.size(); ++k) {
      ArgumentSet s;
      for (auto t : kAllArgumentTypes) {
        if ((*answers[k].type_probs)[index_of(t)] >= config.stage2.threshold) {
          s.insert(t);
        }
      }
      output.results[where[k].first].types[where[k].second] = s;
    }
    output.timing.stage2_requests = requests.size();
  }
  output.timing.stage2_seconds = seconds_since(t0);

  t0 = Clock::now();
  const auto n = static_cast<std::int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    auto d = static_cast<std::size_t>(i);
    auto& r = output.results[d];
    Document relabeled;
    relabeled.doc_id = docs[d].doc_id;
    relabeled.court = docs[d].court;
    relabeled.decision_date = docs[d].decision_date;
    for (std::size_t p = 0; p < docs[d].paragraphs.size(); ++p) {
      if (config.length_over_retained && !r.retained[p]) continue;
      relabeled.paragraphs.push_back(
          {docs[d].paragraphs[p].para_id, docs[d].paragraphs[p].text, r.types[p]});
    }
    r.features = extract_features(relabeled);
    r.probability = model.predict(r.features);
    r.label = r.probability >= 0.5 ? HolisticLabel::kNonFormalistic
                                   : HolisticLabel::kFormalistic;
  }
  output.timing.stage3_seconds = seconds_since(t0);
  return output;
}

PipelineOutput run_pipeline(const Corpus& corpus, const PipelineConfig& config,
                            const MlpModel& model) {
  config.validate();
  std::unique_ptr<Backend> s1;
  if (config.filtering_enabled) s1 = make_backend(config.stage1);
  auto s2 = make_backend(config.stage2);
  return run_pipeline(corpus, config, model, s1.get(), *s2);
}

PipelineOutput run_pipeline(const Corpus& corpus, const PipelineConfig& config) {
  auto model = load_model(config.stage3_model);
  return run_pipeline(corpus, config, model);
}

Corpus predicted_corpus(const Corpus& corpus,
                        std::span<const PipelineResult> results) {
  if (results.size() != corpus.documents.size()) {
    throw ValidationError("results do not match corpus");
  }
  Corpus out = corpus;
  for (std::size_t d = 0; d < results.size(); ++d) {
    auto& doc = out.documents[d];
    if (doc.doc_id != results[d].doc_id ||
        doc.paragraphs.size() != results[d].types.size()) {
      throw ValidationError(
          fmt::format("results do not match document '{}'", doc.doc_id));
    }
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
      doc.paragraphs[p].argument_types = results[d].types[p];
    }
    doc.holistic_label = results[d].label;
  }
  return out;
}

void write_results(std::ostream& out, std::span<const PipelineResult> results,
                   const PipelineTiming* timing) {
  nlohmann::ordered_json j;
  j["format_version"] = kPipelineFormatVersion;
  j["kind"] = "formalism-pipeline-results";
  auto docs = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json d;
    d["doc_id"] = r.doc_id;
    d["label"] = std::string(to_string(r.label));
    d["probability"] = r.probability;
    nlohmann::ordered_json f;
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      f[std::string(feature_names()[k])] = r.features[k];
    }
    d["features"] = std::move(f);
    auto paras = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < r.retained.size(); ++p) {
      nlohmann::ordered_json pj;
      pj["index"] = p;
      pj["retained"] = static_cast<bool>(r.retained[p]);
      auto types = nlohmann::ordered_json::array();
      for (auto t : kAllArgumentTypes) {
        if (r.types[p].contains(t)) types.push_back(std::string(code_of(t)));
      }
      pj["types"] = std::move(types);
      paras.push_back(std::move(pj));
    }
    d["paragraphs"] = std::move(paras);
    docs.push_back(std::move(d));
  }
  j["documents"] = std::move(docs);
  if (timing != nullptr) {
    j["timing"] = {{"stage1_seconds", timing->stage1_seconds},
                   {"stage2_seconds", timing->stage2_seconds},
                   {"stage3_seconds", timing->stage3_seconds},
                   {"stage1_requests", timing->stage1_requests},
                   {"stage2_requests", timing->stage2_requests}};
  }
  out << j.dump(2) << '\n';
}

void write_gold_answers(std::ostream& out, const Corpus& corpus) {
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
      StageResponse r;
      r.id = paragraph_request_id(d, p);
      r.presence_prob = doc.paragraphs[p].argument_types.empty() ? 0.0 : 1.0;
      r.type_probs = indicator(doc.paragraphs[p].argument_types);
      out << format_response(r) << '\n';
    }
  }
}

}  // namespace formalism
