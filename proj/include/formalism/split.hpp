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

#ifndef FORMALISM_SPLIT_HPP_
#define FORMALISM_SPLIT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formalism/corpus.hpp"

namespace formalism {

enum class SplitPart : std::uint8_t { kTrain, kValidation, kTest };

inline constexpr std::array<SplitPart, 3> kAllSplitParts{
    SplitPart::kTrain, SplitPart::kValidation, SplitPart::kTest};

std::string_view to_string(SplitPart p);
std::optional<SplitPart> parse_split_part(std::string_view s);

struct SplitRatios {
  double train = 0.7;
  double validation = 0.2;
  double test = 0.1;

  double operator[](SplitPart p) const;
};

// doc_id -> part, kept in corpus order.
class SplitAssignment {
 public:
  void assign(std::string doc_id, SplitPart part);
  std::optional<SplitPart> part_of(std::string_view doc_id) const;
  std::size_t size() const { return order_.size(); }
  std::size_t count(SplitPart part) const;
  const std::vector<std::pair<std::string, SplitPart>>& entries() const {
    return order_;
  }

 private:
  std::vector<std::pair<std::string, SplitPart>> order_;
  std::map<std::string, SplitPart, std::less<>> index_;
};

// Largest-remainder allocation of n items over the three ratios. Remainder
// ties go to the part with the smaller ratio, then to the earlier part.
std::array<std::size_t, 3> allocate_counts(std::size_t n,
                                           const SplitRatios& ratios);

// Partitions documents per (holistic label x court) stratum. Strata are
// visited in a fixed order, each is shuffled with the seeded generator and
// cut according to allocate_counts. Throws ValidationError if ratios are
// invalid or any document lacks a holistic label.
SplitAssignment stratified_split(const Corpus& corpus,
                                 const SplitRatios& ratios,
                                 std::uint64_t seed);

// CSV with header "doc_id,split".
void write_split(std::ostream& out, const SplitAssignment& split);
SplitAssignment read_split(std::istream& in);
SplitAssignment load_split(const std::filesystem::path& path);
void save_split(const std::filesystem::path& path, const SplitAssignment& split);

// Documents of one part, in corpus order. Throws ValidationError if a corpus
// document is missing from the split.
Corpus select_part(const Corpus& corpus, const SplitAssignment& split,
                   SplitPart part);

}  // namespace formalism

#endif  // FORMALISM_SPLIT_HPP_
