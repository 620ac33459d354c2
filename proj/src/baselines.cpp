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

#include "formalism/baselines.hpp"

#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "formalism/text.hpp"

namespace formalism {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::string_view kRegexChars = "\\[](){}^$|+?";

}  // namespace

bool majority_binary(std::span<const bool> train) {
  if (train.empty()) throw ValidationError("majority: no training labels");
  std::size_t pos = 0;
  for (bool b : train) pos += b ? 1 : 0;
  return pos > train.size() - pos;
}

ArgumentSet majority_set(std::span<const ArgumentSet> train) {
  if (train.empty()) throw ValidationError("majority: no training labels");
  ArgumentSet out;
  for (auto t : kAllArgumentTypes) {
    std::size_t pos = 0;
    for (const auto& s : train) pos += s.contains(t) ? 1 : 0;
    if (pos > train.size() - pos) out.insert(t);
  }
  return out;
}

std::string_view to_string(RandomMode m) {
  return m == RandomMode::kUniform ? "uniform" : "marginal";
}

std::optional<RandomMode> parse_random_mode(std::string_view s) {
  if (s == "uniform") return RandomMode::kUniform;
  if (s == "marginal") return RandomMode::kMarginal;
  return std::nullopt;
}

double counter_uniform(std::uint64_t seed, std::uint64_t instance,
                       std::uint64_t stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ instance);
  h = splitmix64(h ^ (stream * 0x632be59bd9b4e019ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

RandomBinaryPredictor::RandomBinaryPredictor(std::span<const bool> train,
                                             RandomMode mode,
                                             std::uint64_t seed)
    : seed_(seed) {
  if (mode == RandomMode::kMarginal) {
    if (train.empty()) throw ValidationError("random: marginal mode needs labels");
    std::size_t pos = 0;
    for (bool b : train) pos += b ? 1 : 0;
    rate_ = static_cast<double>(pos) / static_cast<double>(train.size());
  }
}

bool RandomBinaryPredictor::predict(std::uint64_t instance) const {
  return counter_uniform(seed_, instance, 0) < rate_;
}

RandomSetPredictor::RandomSetPredictor(std::span<const ArgumentSet> train,
                                       RandomMode mode, std::uint64_t seed)
    : seed_(seed) {
  rates_.fill(0.5);
  if (mode == RandomMode::kMarginal) {
    if (train.empty()) throw ValidationError("random: marginal mode needs labels");
    for (auto t : kAllArgumentTypes) {
      std::size_t pos = 0;
      for (const auto& s : train) pos += s.contains(t) ? 1 : 0;
      rates_[index_of(t)] =
          static_cast<double>(pos) / static_cast<double>(train.size());
    }
  }
}

ArgumentSet RandomSetPredictor::predict(std::uint64_t instance) const {
  ArgumentSet out;
  for (auto t : kAllArgumentTypes) {
    auto i = index_of(t);
    if (counter_uniform(seed_, instance, i + 1) < rates_[i]) out.insert(t);
  }
  return out;
}

bool wildcard_contains(std::u32string_view text,
                       std::span<const std::u32string> pieces) {
  // Leftmost placement of each piece is optimal for unanchored patterns.
  std::size_t from = 0;
  for (const auto& piece : pieces) {
    auto at = text.find(piece, from);
    if (at == std::u32string_view::npos) return false;
    from = at + piece.size();
  }
  return true;
}

void TriggerLexicon::add(ArgumentType type, std::string_view pattern) {
  if (pattern.find_first_of(kRegexChars) != std::string_view::npos) {
    throw ValidationError(fmt::format(
        "lexicon pattern '{}' uses regular-expression syntax", pattern));
  }
  Compiled c{type, {}};
  auto folded = fold_case(decode_utf8(pattern));
  std::size_t start = 0;
  while (start <= folded.size()) {
    auto star = folded.find(U'*', start);
    auto end = star == std::u32string::npos ? folded.size() : star;
    if (end > start) c.pieces.emplace_back(folded.substr(start, end - start));
    if (star == std::u32string::npos) break;
    start = star + 1;
  }
  bool visible = false;
  for (const auto& p : c.pieces) {
    for (char32_t ch : p) visible = visible || !is_unicode_whitespace(ch);
  }
  if (!visible) throw ValidationError("lexicon pattern is empty");
  entries_.push_back({type, std::string(pattern)});
  compiled_.push_back(std::move(c));
}

ArgumentSet TriggerLexicon::classify(std::string_view text) const {
  ArgumentSet out;
  if (compiled_.empty()) return out;
  auto folded = fold_case(decode_utf8(text));
  for (const auto& c : compiled_) {
    if (out.contains(c.type)) continue;
    if (wildcard_contains(folded, c.pieces)) out.insert(c.type);
  }
  return out;
}

TriggerLexicon read_lexicon(std::istream& in) {
  TriggerLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(line_no, "expected CODE<TAB>pattern");
    }
    auto type = parse_argument_type(line.substr(0, tab));
    if (!type) {
      throw ParseError(line_no,
                       fmt::format("unknown argument type '{}'", line.substr(0, tab)));
    }
    try {
      lex.add(*type, std::string_view(line).substr(tab + 1));
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return lex;
}

TriggerLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open lexicon '{}'", path.string()));
  return read_lexicon(in);
}

ArgumentSet trigger_classify(const Paragraph& paragraph,
                             const TriggerLexicon& lexicon) {
  return lexicon.classify(paragraph.text);
}

}  // namespace formalism
