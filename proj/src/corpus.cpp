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

#include "formalism/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "formalism/text.hpp"

namespace formalism {

using nlohmann::json;

namespace {

const std::vector<std::string> kDocumentFields{
    "doc_id", "court", "decision_date", "holistic_label", "paragraphs"};

const json& require(const json& record, const char* field) {
  auto it = record.find(field);
  if (it == record.end()) {
    throw ValidationError(fmt::format("missing field '{}'", field));
  }
  return *it;
}

std::string require_string(const json& record, const char* field) {
  const json& v = require(record, field);
  if (!v.is_string()) {
    throw ValidationError(fmt::format("field '{}' must be a string", field));
  }
  return v.get<std::string>();
}

Paragraph paragraph_from_json(const json& p) {
  if (!p.is_object()) throw ValidationError("paragraph must be an object");
  Paragraph para;
  para.para_id = require_string(p, "para_id");
  para.text = require_string(p, "text");
  const json& types = require(p, "argument_types");
  if (!types.is_array()) {
    throw ValidationError("field 'argument_types' must be an array");
  }
  for (const auto& code : types) {
    if (!code.is_string()) {
      throw ValidationError("argument type codes must be strings");
    }
    auto s = code.get<std::string>();
    auto t = parse_argument_type(s);
    if (!t) {
      throw ValidationError(fmt::format(
          "unknown argument type code '{}' in paragraph '{}'", s,
          para.para_id));
    }
    if (para.argument_types.contains(*t)) {
      throw ValidationError(fmt::format(
          "argument type '{}' listed twice in paragraph '{}'", s,
          para.para_id));
    }
    para.argument_types.insert(*t);
  }
  return para;
}

void validate_document(const Document& doc) {
  if (doc.doc_id.empty()) throw ValidationError("empty doc_id");
  if (doc.paragraphs.empty()) {
    throw ValidationError(
        fmt::format("document '{}' has no paragraphs", doc.doc_id));
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& p : doc.paragraphs) {
    if (p.para_id.empty()) {
      throw ValidationError(
          fmt::format("document '{}' has an empty para_id", doc.doc_id));
    }
    if (!ids.insert(p.para_id).second) {
      throw ValidationError(fmt::format(
          "duplicate para_id '{}' in document '{}'", p.para_id, doc.doc_id));
    }
    if (!has_visible_text(p.text)) {
      throw ValidationError(fmt::format(
          "paragraph '{}' of document '{}' has blank text", p.para_id,
          doc.doc_id));
    }
  }
}

}  // namespace

const Document* Corpus::find(std::string_view doc_id) const {
  auto it = std::find_if(documents.begin(), documents.end(),
                         [&](const Document& d) { return d.doc_id == doc_id; });
  return it == documents.end() ? nullptr : &*it;
}

std::string format_date(std::chrono::year_month_day d) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(d.year()),
                     static_cast<unsigned>(d.month()),
                     static_cast<unsigned>(d.day()));
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto num = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, v);
    if (ec != std::errc{} || p != s.data() + pos + len) return std::nullopt;
    return v;
  };
  auto y = num(0, 4), m = num(5, 2), d = num(8, 2);
  if (!y || !m || !d) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{*y},
                                  std::chrono::month{static_cast<unsigned>(*m)},
                                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

Document document_from_json(const json& record) {
  if (!record.is_object()) throw ValidationError("record must be an object");
  Document doc;
  doc.doc_id = require_string(record, "doc_id");
  auto court = require_string(record, "court");
  auto parsed_court = parse_court(court);
  if (!parsed_court) {
    throw ValidationError(fmt::format("unknown court '{}'", court));
  }
  doc.court = *parsed_court;
  auto date = require_string(record, "decision_date");
  auto parsed_date = parse_date(date);
  if (!parsed_date) {
    throw ValidationError(fmt::format("invalid decision_date '{}'", date));
  }
  doc.decision_date = *parsed_date;
  const json& label = require(record, "holistic_label");
  if (!label.is_null()) {
    auto s = label.is_string() ? label.get<std::string>() : label.dump();
    auto l = parse_holistic_label(s);
    if (!l) throw ValidationError(fmt::format("unknown holistic_label '{}'", s));
    doc.holistic_label = *l;
  }
  const json& paragraphs = require(record, "paragraphs");
  if (!paragraphs.is_array()) {
    throw ValidationError("field 'paragraphs' must be an array");
  }
  doc.paragraphs.reserve(paragraphs.size());
  for (const auto& p : paragraphs) doc.paragraphs.push_back(paragraph_from_json(p));
  validate_document(doc);
  return doc;
}

nlohmann::ordered_json document_to_json(const Document& doc) {
  nlohmann::ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["court"] = to_string(doc.court);
  j["decision_date"] = format_date(doc.decision_date);
  if (doc.holistic_label) {
    j["holistic_label"] = to_string(*doc.holistic_label);
  } else {
    j["holistic_label"] = nullptr;
  }
  auto paragraphs = nlohmann::ordered_json::array();
  for (const auto& p : doc.paragraphs) {
    nlohmann::ordered_json pj;
    pj["para_id"] = p.para_id;
    pj["text"] = p.text;
    auto types = nlohmann::ordered_json::array();
    for (auto t : kAllArgumentTypes) {
      if (p.argument_types.contains(t)) types.push_back(code_of(t));
    }
    pj["argument_types"] = std::move(types);
    paragraphs.push_back(std::move(pj));
  }
  j["paragraphs"] = std::move(paragraphs);
  return j;
}

void validate(const Corpus& corpus) {
  std::unordered_set<std::string_view> ids;
  for (const auto& doc : corpus.documents) {
    validate_document(doc);
    if (!ids.insert(doc.doc_id).second) {
      throw ValidationError(fmt::format("duplicate doc_id '{}'", doc.doc_id));
    }
  }
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  bool seen_document = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!has_visible_text(line)) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, fmt::format("malformed record: {}", e.what()));
    }
    if (!record.is_object()) {
      throw ParseError(line_no, "record must be a JSON object");
    }
    if (!record.contains("doc_id")) {
      if (seen_document || !record.contains("format_version")) {
        throw ParseError(line_no, "missing field 'doc_id'");
      }
      const auto& v = record["format_version"];
      if (!v.is_number_integer() || v.get<int>() != kCorpusFormatVersion) {
        throw ParseError(line_no, fmt::format("unsupported format_version {}",
                                              v.dump()));
      }
      if (auto it = record.find("provenance"); it != record.end()) {
        if (!it->is_object()) {
          throw ParseError(line_no, "provenance must be an object");
        }
        corpus.provenance = *it;
      }
      continue;
    }
    seen_document = true;
    Document doc;
    try {
      doc = document_from_json(record);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!ids.insert(doc.doc_id).second) {
      throw ParseError(line_no, fmt::format("duplicate doc_id '{}'", doc.doc_id));
    }
    json unknown = json::object();
    for (const auto& [key, value] : record.items()) {
      if (std::find(kDocumentFields.begin(), kDocumentFields.end(), key) ==
          kDocumentFields.end()) {
        unknown[key] = value;
      }
    }
    if (!unknown.empty()) {
      corpus.provenance["unknown_fields"][doc.doc_id] = std::move(unknown);
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError(fmt::format("cannot open corpus file '{}'",
                                      path.string()));
  }
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  nlohmann::ordered_json header;
  header["format_version"] = kCorpusFormatVersion;
  header["provenance"] = corpus.provenance;
  out << header.dump() << '\n';
  const json* unknown = nullptr;
  if (auto it = corpus.provenance.find("unknown_fields");
      it != corpus.provenance.end() && it->is_object()) {
    unknown = &*it;
  }
  for (const auto& doc : corpus.documents) {
    auto j = document_to_json(doc);
    if (unknown) {
      if (auto it = unknown->find(doc.doc_id); it != unknown->end()) {
        for (const auto& [key, value] : it->items()) j[key] = value;
      }
    }
    out << j.dump() << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError(fmt::format("cannot write corpus file '{}'",
                                      path.string()));
  }
  write_corpus(out, corpus);
}

std::size_t token_count(const Document& doc) {
  std::size_t n = 0;
  for (const auto& p : doc.paragraphs) n += token_count(p.text);
  return n;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.n_documents = corpus.documents.size();
  std::size_t token_total = 0;
  bool first = true;
  for (const auto& doc : corpus.documents) {
    std::size_t doc_args = 0;
    for (const auto& p : doc.paragraphs) {
      ++s.n_paragraphs;
      auto k = p.argument_types.size();
      doc_args += k;
      if (k == 0) {
        ++s.paragraphs_with_0;
      } else if (k == 1) {
        ++s.paragraphs_with_1_arg;
      } else {
        ++s.paragraphs_with_2plus;
      }
    }
    s.n_arguments += doc_args;
    s.args_per_doc_max = std::max(s.args_per_doc_max, doc_args);
    if (doc_args == 0) ++s.docs_with_zero_args;
    auto tokens = token_count(doc);
    token_total += tokens;
    s.token_min = first ? tokens : std::min(s.token_min, tokens);
    s.token_max = std::max(s.token_max, tokens);
    first = false;
  }
  if (s.n_documents > 0) {
    auto n = static_cast<double>(s.n_documents);
    s.token_mean = static_cast<double>(token_total) / n;
    s.args_per_doc_mean = static_cast<double>(s.n_arguments) / n;
  }
  return s;
}

}  // namespace formalism
