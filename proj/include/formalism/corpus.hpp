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

// Annotated decision corpus: data model, line-delimited JSON ingestion and
// validation, and summary statistics.
//
// File format (UTF-8, one JSON record per line):
//
//   {"format_version":1,"provenance":{...}}          optional header line
//   {"doc_id":"...","court":"SC"|"SAC","decision_date":"YYYY-MM-DD",
//    "holistic_label":"formalistic"|"non_formalistic"|null,
//    "paragraphs":[{"para_id":"...","text":"...","argument_types":["CL"]}]}
//
// Blank lines are ignored. Unknown document fields are kept in
// provenance["unknown_fields"][doc_id] and written back on save.

#ifndef FORMALISM_CORPUS_HPP_
#define FORMALISM_CORPUS_HPP_

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "formalism/argument_type.hpp"
#include "json.hpp"

namespace formalism {

inline constexpr int kCorpusFormatVersion = 1;

struct Paragraph {
  std::string para_id;
  std::string text;
  ArgumentSet argument_types;
};

struct Document {
  std::string doc_id;
  Court court = Court::SC;
  std::chrono::year_month_day decision_date{};
  std::optional<HolisticLabel> holistic_label;
  std::vector<Paragraph> paragraphs;

  int year() const { return static_cast<int>(decision_date.year()); }
};

struct Corpus {
  std::vector<Document> documents;
  nlohmann::json provenance = nlohmann::json::object();

  const Document* find(std::string_view doc_id) const;
};

// Throws ValidationError naming the offending document on invariant
// violations (empty/duplicate ids, empty paragraphs, blank text).
void validate(const Corpus& corpus);

// Parsing and serialization. Both throw ParseError (with line number) on
// malformed JSON and ValidationError on schema errors.
Corpus read_corpus(std::istream& in);
Corpus load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

Document document_from_json(const nlohmann::json& record);
nlohmann::ordered_json document_to_json(const Document& doc);

std::string format_date(std::chrono::year_month_day d);
std::optional<std::chrono::year_month_day> parse_date(std::string_view s);

std::size_t token_count(const Document& doc);

struct CorpusStats {
  std::size_t n_documents = 0;
  std::size_t n_paragraphs = 0;
  std::size_t n_arguments = 0;
  std::size_t paragraphs_with_0 = 0;
  std::size_t paragraphs_with_1_arg = 0;
  std::size_t paragraphs_with_2plus = 0;
  std::size_t token_min = 0;
  std::size_t token_max = 0;
  double token_mean = 0.0;
  double args_per_doc_mean = 0.0;
  std::size_t args_per_doc_max = 0;
  std::size_t docs_with_zero_args = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace formalism

#endif  // FORMALISM_CORPUS_HPP_
