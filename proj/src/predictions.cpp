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

#include "formalism/predictions.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "json.hpp"

namespace formalism {

using nlohmann::json;

namespace {

constexpr std::string_view kKind = "formalism-predictions";
constexpr int kFormatVersion = 1;

bool is_paragraph_task(Task t) { return t != Task::kHolistic; }

using ParaKey = std::pair<std::string, std::string>;

}  // namespace

std::optional<Task> parse_task(int n) {
  if (n >= 1 && n <= 3) return static_cast<Task>(n);
  return std::nullopt;
}

void write_predictions(std::ostream& out, const Predictions& p) {
  nlohmann::ordered_json header;
  header["format_version"] = kFormatVersion;
  header["kind"] = kKind;
  header["task"] = static_cast<int>(p.task);
  out << header.dump() << '\n';
  if (is_paragraph_task(p.task)) {
    for (const auto& r : p.paragraphs) {
      nlohmann::ordered_json j;
      j["doc_id"] = r.doc_id;
      j["para_id"] = r.para_id;
      if (p.task == Task::kPresence) {
        j["present"] = r.present;
      } else {
        auto types = nlohmann::ordered_json::array();
        for (auto t : kAllArgumentTypes) {
          if (r.types.contains(t)) types.push_back(std::string(code_of(t)));
        }
        j["types"] = std::move(types);
      }
      out << j.dump() << '\n';
    }
  } else {
    for (const auto& r : p.documents) {
      nlohmann::ordered_json j;
      j["doc_id"] = r.doc_id;
      j["label"] = std::string(to_string(r.label));
      out << j.dump() << '\n';
    }
  }
}

Predictions predictions_from_corpus(const Corpus& corpus, Task task) {
  Predictions p;
  p.task = task;
  for (const auto& d : corpus.documents) {
    if (task == Task::kHolistic) {
      if (!d.holistic_label) {
        throw ValidationError(
            fmt::format("document '{}' has no holistic label", d.doc_id));
      }
      p.documents.push_back({d.doc_id, *d.holistic_label});
      continue;
    }
    for (const auto& para : d.paragraphs) {
      p.paragraphs.push_back({d.doc_id, para.para_id, para.argument_types,
                              !para.argument_types.empty()});
    }
  }
  return p;
}

Predictions read_predictions(std::istream& in, Task task) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  json header;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = json::parse(line, nullptr, false);
    break;
  }
  if (!header.is_object() || header.value("kind", std::string()) != kKind) {
    std::istringstream corpus_in(text);
    return predictions_from_corpus(read_corpus(corpus_in), task);
  }
  if (header.value("format_version", 0) != kFormatVersion) {
    throw ParseError(line_no, "unsupported predictions format_version");
  }
  if (header.value("task", 0) != static_cast<int>(task)) {
    throw ParseError(line_no, fmt::format("predictions are for task {}, expected {}",
                                          header.value("task", 0),
                                          static_cast<int>(task)));
  }
  Predictions p;
  p.task = task;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = json::parse(line);
      auto doc_id = j.at("doc_id").get<std::string>();
      if (task == Task::kHolistic) {
        auto label = parse_holistic_label(j.at("label").get<std::string>());
        if (!label) throw ParseError(line_no, "unknown holistic label");
        p.documents.push_back({std::move(doc_id), *label});
        continue;
      }
      ParagraphPrediction r;
      r.doc_id = std::move(doc_id);
      r.para_id = j.at("para_id").get<std::string>();
      if (task == Task::kPresence) {
        r.present = j.at("present").get<bool>();
      } else {
        for (const auto& code : j.at("types")) {
          auto t = parse_argument_type(code.get<std::string>());
          if (!t) throw ParseError(line_no, "unknown argument type");
          if (r.types.contains(*t)) throw ParseError(line_no, "repeated argument type");
          r.types.insert(*t);
        }
        r.present = !r.types.empty();
      }
      p.paragraphs.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return p;
}

Predictions load_predictions(const std::filesystem::path& path, Task task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError(fmt::format("cannot open predictions '{}'", path.string()));
  }
  return read_predictions(in, task);
}

void save_predictions(const std::filesystem::path& path, const Predictions& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError(fmt::format("cannot write predictions '{}'", path.string()));
  }
  write_predictions(out, p);
}

TaskReport evaluate(const Corpus& gold, const Predictions& pred) {
  auto expected = predictions_from_corpus(gold, pred.task);
  if (pred.task == Task::kHolistic) {
    std::map<std::string, HolisticLabel, std::less<>> by_id;
    for (const auto& r : pred.documents) {
      if (!by_id.emplace(r.doc_id, r.label).second) {
        throw ValidationError(fmt::format("document '{}' predicted twice", r.doc_id));
      }
    }
    const auto n = expected.documents.size();
    auto g = std::make_unique<bool[]>(n);
    auto q = std::make_unique<bool[]>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = expected.documents[i];
      auto it = by_id.find(e.doc_id);
      if (it == by_id.end()) {
        throw ValidationError(fmt::format("no prediction for document '{}'", e.doc_id));
      }
      g[i] = e.label == HolisticLabel::kNonFormalistic;
      q[i] = it->second == HolisticLabel::kNonFormalistic;
      by_id.erase(it);
    }
    if (!by_id.empty()) {
      throw ValidationError(
          fmt::format("prediction for unknown document '{}'", by_id.begin()->first));
    }
    return binary_macro_prf({g.get(), n}, {q.get(), n});
  }

  std::map<ParaKey, const ParagraphPrediction*> by_id;
  for (const auto& r : pred.paragraphs) {
    if (!by_id.emplace(ParaKey{r.doc_id, r.para_id}, &r).second) {
      throw ValidationError(fmt::format("paragraph '{}/{}' predicted twice",
                                        r.doc_id, r.para_id));
    }
  }
  const auto n = expected.paragraphs.size();
  std::vector<const ParagraphPrediction*> matched(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = expected.paragraphs[i];
    auto it = by_id.find(ParaKey{e.doc_id, e.para_id});
    if (it == by_id.end()) {
      throw ValidationError(
          fmt::format("no prediction for paragraph '{}/{}'", e.doc_id, e.para_id));
    }
    matched[i] = it->second;
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    const auto& k = by_id.begin()->first;
    throw ValidationError(
        fmt::format("prediction for unknown paragraph '{}/{}'", k.first, k.second));
  }
  if (pred.task == Task::kPresence) {
    auto g = std::make_unique<bool[]>(n);
    auto q = std::make_unique<bool[]>(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = expected.paragraphs[i].present;
      q[i] = matched[i]->present;
    }
    if (n == 0) throw ValidationError("no paragraphs to evaluate");
    return binary_macro_prf({g.get(), n}, {q.get(), n});
  }
  std::vector<ArgumentSet> g(n);
  std::vector<ArgumentSet> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = expected.paragraphs[i].types;
    q[i] = matched[i]->types;
  }
  return multilabel_report(g, q);
}

std::optional<BaselineKind> parse_baseline_kind(std::string_view s) {
  if (s == "majority") return BaselineKind::kMajority;
  if (s == "random") return BaselineKind::kRandom;
  if (s == "trigger") return BaselineKind::kTrigger;
  return std::nullopt;
}

Predictions run_baseline(BaselineKind kind, Task task, const Corpus& train,
                         const Corpus& target, const BaselineOptions& options) {
  if (kind == BaselineKind::kTrigger) {
    if (task == Task::kHolistic) {
      throw ValidationError("the trigger baseline covers tasks 1 and 2 only");
    }
    if (options.lexicon == nullptr) throw ValidationError("trigger baseline needs a lexicon");
  }
  const bool needs_train =
      kind == BaselineKind::kMajority ||
      (kind == BaselineKind::kRandom && options.mode == RandomMode::kMarginal);
  Predictions train_labels;
  if (needs_train) train_labels = predictions_from_corpus(train, task);

  Predictions out = predictions_from_corpus(target, Task::kTypes);
  out.task = task;
  if (task == Task::kHolistic) {
    out.paragraphs.clear();
    for (const auto& d : target.documents) out.documents.push_back({d.doc_id, {}});
    const auto n = train_labels.documents.size();
    auto labels = std::make_unique<bool[]>(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = train_labels.documents[i].label == HolisticLabel::kNonFormalistic;
    }
    std::span<const bool> train_span(labels.get(), n);
    std::optional<RandomBinaryPredictor> random;
    bool constant = false;
    if (kind == BaselineKind::kMajority) {
      constant = majority_binary(train_span);
    } else {
      random.emplace(train_span, options.mode, options.seed);
    }
    for (std::size_t i = 0; i < out.documents.size(); ++i) {
      bool nf = random ? random->predict(i) : constant;
      out.documents[i].label =
          nf ? HolisticLabel::kNonFormalistic : HolisticLabel::kFormalistic;
    }
    return out;
  }

  // Paragraph tasks: gold annotations in `out` are overwritten below.
  const auto n = train_labels.paragraphs.size();
  auto presence = std::make_unique<bool[]>(n);
  std::vector<ArgumentSet> types(n);
  for (std::size_t i = 0; i < n; ++i) {
    presence[i] = train_labels.paragraphs[i].present;
    types[i] = train_labels.paragraphs[i].types;
  }
  std::span<const bool> presence_span(presence.get(), n);
  switch (kind) {
    case BaselineKind::kMajority: {
      bool present = majority_binary(presence_span);
      auto set = majority_set(types);
      for (auto& r : out.paragraphs) {
        r.present = present;
        r.types = set;
      }
      break;
    }
    case BaselineKind::kRandom: {
      RandomBinaryPredictor rp(presence_span, options.mode, options.seed);
      RandomSetPredictor rs(types, options.mode, options.seed);
      for (std::size_t i = 0; i < out.paragraphs.size(); ++i) {
        out.paragraphs[i].present = rp.predict(i);
        out.paragraphs[i].types = rs.predict(i);
      }
      break;
    }
    case BaselineKind::kTrigger: {
      std::size_t i = 0;
      for (const auto& d : target.documents) {
        for (const auto& para : d.paragraphs) {
          auto& r = out.paragraphs[i++];
          r.types = trigger_classify(para, *options.lexicon);
          r.present = !r.types.empty();
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace formalism
