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

// Predictions for the three tasks, their file format, and evaluation against
// a gold corpus.
//
//   task 1  paragraph argument presence        (positive: present)
//   task 2  paragraph argument types, 8 labels
//   task 3  document holistic label            (positive: non-formalistic)
//
// File format, one JSON object per line:
//
//   {"format_version":1,"kind":"formalism-predictions","task":2}
//   {"doc_id":"a","para_id":"p1","present":true}              task 1
//   {"doc_id":"a","para_id":"p1","types":["CL","TI"]}         task 2
//   {"doc_id":"a","label":"non_formalistic"}                  task 3
//
// A corpus file is also accepted wherever predictions are read: its
// annotations stand in for the predicted labels.

#ifndef FORMALISM_PREDICTIONS_HPP_
#define FORMALISM_PREDICTIONS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "formalism/argument_type.hpp"
#include "formalism/baselines.hpp"
#include "formalism/corpus.hpp"
#include "formalism/metrics.hpp"

namespace formalism {

enum class Task : std::uint8_t { kPresence = 1, kTypes = 2, kHolistic = 3 };

std::optional<Task> parse_task(int n);

struct ParagraphPrediction {
  std::string doc_id;
  std::string para_id;
  ArgumentSet types;     // task 2
  bool present = false;  // task 1
};

struct DocumentPrediction {
  std::string doc_id;
  HolisticLabel label = HolisticLabel::kFormalistic;
};

struct Predictions {
  Task task = Task::kHolistic;
  std::vector<ParagraphPrediction> paragraphs;  // tasks 1 and 2
  std::vector<DocumentPrediction> documents;    // task 3
};

void write_predictions(std::ostream& out, const Predictions& p);
// Reads either format; `task` selects how a corpus file is interpreted and
// must agree with a predictions header.
Predictions read_predictions(std::istream& in, Task task);
Predictions load_predictions(const std::filesystem::path& path, Task task);
void save_predictions(const std::filesystem::path& path, const Predictions& p);

// Gold annotations of `corpus` as predictions.
Predictions predictions_from_corpus(const Corpus& corpus, Task task);

using TaskReport = std::variant<BinaryReport, EvaluationReport>;

// Pairs predictions with gold units by id; every gold unit must be predicted
// exactly once and no unknown ids may appear (ValidationError otherwise).
TaskReport evaluate(const Corpus& gold, const Predictions& pred);

enum class BaselineKind : std::uint8_t { kMajority, kRandom, kTrigger };

std::optional<BaselineKind> parse_baseline_kind(std::string_view s);

struct BaselineOptions {
  RandomMode mode = RandomMode::kUniform;
  std::uint64_t seed = 0;
  const TriggerLexicon* lexicon = nullptr;  // required for kTrigger
};

// Fits on `train` (ignored by uniform random and trigger) and predicts every
// unit of `target`. Trigger supports tasks 1 and 2 only.
Predictions run_baseline(BaselineKind kind, Task task, const Corpus& train,
                         const Corpus& target, const BaselineOptions& options);

}  // namespace formalism

#endif  // FORMALISM_PREDICTIONS_HPP_
