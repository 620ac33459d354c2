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

// Reference predictors: majority, random and a trigger-phrase lexicon.
//
// Binary tasks use `true` for the positive class (argument present, or
// non-formalistic). The declared label order is negative first, so majority
// ties resolve to `false`.
//
// Random predictors are counter-based: the draw for instance i depends only
// on (seed, i), so they are immutable and can be shared across threads.

#ifndef FORMALISM_BASELINES_HPP_
#define FORMALISM_BASELINES_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formalism/argument_type.hpp"
#include "formalism/corpus.hpp"

namespace formalism {

// Modal label; ties go to false. Throws ValidationError on empty input.
bool majority_binary(std::span<const bool> train);

// Per-label majority over label sets; a label is kept only with a strict
// majority, so sparse labels yield the empty set.
ArgumentSet majority_set(std::span<const ArgumentSet> train);

enum class RandomMode : std::uint8_t { kUniform, kMarginal };

std::string_view to_string(RandomMode m);
std::optional<RandomMode> parse_random_mode(std::string_view s);

class RandomBinaryPredictor {
 public:
  // Marginal mode requires non-empty train labels.
  RandomBinaryPredictor(std::span<const bool> train, RandomMode mode,
                        std::uint64_t seed);

  bool predict(std::uint64_t instance) const;
  double positive_rate() const { return rate_; }

 private:
  double rate_ = 0.5;
  std::uint64_t seed_ = 0;
};

class RandomSetPredictor {
 public:
  RandomSetPredictor(std::span<const ArgumentSet> train, RandomMode mode,
                     std::uint64_t seed);

  ArgumentSet predict(std::uint64_t instance) const;
  double positive_rate(ArgumentType t) const { return rates_[index_of(t)]; }

 private:
  std::array<double, kNumArgumentTypes> rates_{};
  std::uint64_t seed_ = 0;
};

// Uniform draw in [0,1) for (seed, instance, stream); exposed for tests.
double counter_uniform(std::uint64_t seed, std::uint64_t instance,
                       std::uint64_t stream);

// Case-insensitive cue patterns per argument type. A pattern is a literal
// phrase that may contain `*` (any run of characters, possibly empty) and
// matches anywhere in the paragraph text.
class TriggerLexicon {
 public:
  struct Entry {
    ArgumentType type;
    std::string pattern;  // as written
  };

  // Throws ValidationError on an empty or regex-like pattern.
  void add(ArgumentType type, std::string_view pattern);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Types whose patterns match `text`.
  ArgumentSet classify(std::string_view text) const;

 private:
  struct Compiled {
    ArgumentType type;
    std::vector<std::u32string> pieces;  // folded, split on '*'
  };
  std::vector<Entry> entries_;
  std::vector<Compiled> compiled_;
};

// One `CODE<TAB>pattern` per line; blank lines and lines starting with '#'
// are skipped. Throws ParseError with the line number.
TriggerLexicon read_lexicon(std::istream& in);
TriggerLexicon load_lexicon(const std::filesystem::path& path);

ArgumentSet trigger_classify(const Paragraph& paragraph,
                             const TriggerLexicon& lexicon);

// Wildcard substring match on already-folded text; exposed for tests.
bool wildcard_contains(std::u32string_view text,
                       std::span<const std::u32string> pieces);

}  // namespace formalism

#endif  // FORMALISM_BASELINES_HPP_
