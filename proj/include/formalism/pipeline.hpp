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

// Three-stage holistic formalism pipeline.
//
//   stage 1  paragraph presence filter   (skipped when filtering is off)
//   stage 2  argument types per retained paragraph
//   stage 3  document features -> MLP -> holistic label
//
// Stages 1 and 2 are served by a StageBackend: a built-in baseline, an
// external model speaking the line protocol below, or a replay of recorded
// answers.
//
// Wire protocol, UTF-8, one JSON object per line:
//
//   request   {"id": "d3:p17", "task": "presence"|"types", "text": "..."}
//   presence  {"id": "d3:p17", "presence_prob": 0.93}
//   types     {"id": "d3:p17", "type_probs": {"LIN": 0.1, ..., "PC": 0.0}}
//
// All eight codes must be present in type_probs. Responses may come in any
// order; each request id must be answered exactly once. Ids are
// "d<document index>:p<paragraph index>", both zero-based in input order.
//
// An external command is started once per batch: requests are written to its
// standard input, which is then closed, and responses are read from standard
// output until end of file. An HTTP backend receives the same batch as the
// body of one POST and answers in the response body.

#ifndef FORMALISM_PIPELINE_HPP_
#define FORMALISM_PIPELINE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formalism/argument_type.hpp"
#include "formalism/baselines.hpp"
#include "formalism/corpus.hpp"
#include "formalism/features.hpp"
#include "formalism/mlp.hpp"
#include "json.hpp"

namespace formalism {

inline constexpr int kPipelineFormatVersion = 1;

enum class StageTask : std::uint8_t { kPresence, kTypes };

std::string_view to_string(StageTask t);

enum class BackendKind : std::uint8_t {
  kBuiltinMajority,
  kBuiltinRandom,
  kBuiltinTrigger,
  kExternal,
  kReplay,
};

std::string_view to_string(BackendKind k);
std::optional<BackendKind> parse_backend_kind(std::string_view s);

struct StageBackend {
  BackendKind kind = BackendKind::kBuiltinMajority;
  double threshold = 0.5;

  // builtin_majority / builtin_random: labels to fit on. Without a training
  // corpus the majority answer is "absent" and random mode must be uniform.
  std::optional<std::filesystem::path> train_corpus;
  RandomMode random_mode = RandomMode::kUniform;
  std::uint64_t seed = 0;

  // builtin_trigger.
  std::filesystem::path lexicon;

  // external: exactly one of command (run through /bin/sh -c) or the name
  // of an environment variable holding an http:// endpoint.
  std::string command;
  std::string endpoint_env;
  double timeout_seconds = 120.0;

  // replay: file of recorded response lines.
  std::filesystem::path answers;

  // Throws ValidationError on inconsistent settings.
  void validate() const;
};

struct PipelineConfig {
  bool filtering_enabled = true;
  StageBackend stage1;
  StageBackend stage2;
  std::filesystem::path stage3_model;
  std::size_t batch_size = 256;
  // Compute doc_length_tokens over retained paragraphs only.
  bool length_over_retained = false;

  void validate() const;
};

// Relative paths inside the file are resolved against its directory.
PipelineConfig read_pipeline_config(std::istream& in,
                                    const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
StageBackend stage_backend_from_json(const nlohmann::json& j,
                                     const std::filesystem::path& base_dir);

struct StageRequest {
  std::string id;
  StageTask task = StageTask::kPresence;
  std::string text;
  // Position in the stage's request stream; seeds stateless random answers.
  std::uint64_t instance = 0;
};

struct StageResponse {
  std::string id;
  std::optional<double> presence_prob;
  std::optional<std::array<double, kNumArgumentTypes>> type_probs;
};

std::string paragraph_request_id(std::size_t doc, std::size_t para);

std::string format_request(const StageRequest& r);
std::string format_response(const StageResponse& r);
// Throws ProtocolError quoting the line when it is not a valid response.
StageResponse parse_response(std::string_view line);

// Matches responses to requests by id and checks the fields the task needs.
// Result is in request order. Throws ProtocolError on missing, duplicate or
// unknown ids and on probabilities that are non-finite or outside [0,1].
std::vector<StageResponse> match_responses(std::span<const StageRequest> requests,
                                           std::vector<StageResponse> responses);

class Backend {
 public:
  virtual ~Backend() = default;
  // Raw answers for one batch; order and completeness are checked by the
  // caller.
  virtual std::vector<StageResponse> answer(std::span<const StageRequest> batch) = 0;
};

std::unique_ptr<Backend> make_backend(const StageBackend& spec);

// Runs one batch against an external backend and returns validated
// responses in request order.
std::vector<StageResponse> external_classify_batch(
    const StageBackend& backend, std::span<const StageRequest> requests);

// Subprocess transport, exposed for tests. Returns the child's stdout lines.
std::vector<std::string> run_subprocess_batch(const std::string& command,
                                              std::string_view input,
                                              double timeout_seconds);

struct PipelineResult {
  std::string doc_id;
  HolisticLabel label = HolisticLabel::kFormalistic;
  double probability = 0.0;  // of non-formalistic
  FeatureVector features;
  std::vector<bool> retained;
  std::vector<ArgumentSet> types;

  friend bool operator==(const PipelineResult&, const PipelineResult&) = default;
};

struct PipelineTiming {
  double stage1_seconds = 0.0;
  double stage2_seconds = 0.0;
  double stage3_seconds = 0.0;
  std::size_t stage1_requests = 0;
  std::size_t stage2_requests = 0;
};

struct PipelineOutput {
  std::vector<PipelineResult> results;
  PipelineTiming timing;
};

// Holistic labels in `corpus` are ignored. Stage 3 runs in parallel over
// documents.
PipelineOutput run_pipeline(const Corpus& corpus, const PipelineConfig& config,
                            const MlpModel& model);
PipelineOutput run_pipeline(const Corpus& corpus, const PipelineConfig& config);

// Lower-level entry with caller-owned backends. stage1 may be null when
// filtering is off.
PipelineOutput run_pipeline(const Corpus& corpus, const PipelineConfig& config,
                            const MlpModel& model, Backend* stage1,
                            Backend& stage2);

// Copy of `corpus` with predicted argument types and holistic labels.
Corpus predicted_corpus(const Corpus& corpus,
                        std::span<const PipelineResult> results);

void write_results(std::ostream& out, std::span<const PipelineResult> results,
                   const PipelineTiming* timing);

// Recorded answers that reproduce the corpus's gold annotations: presence
// 1/0 and type probabilities 1/0 for every paragraph, in one line per id.
void write_gold_answers(std::ostream& out, const Corpus& corpus);

}  // namespace formalism

#endif  // FORMALISM_PIPELINE_HPP_
