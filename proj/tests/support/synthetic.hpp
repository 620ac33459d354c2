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

// Synthetic corpora and label sets for tests.

#ifndef FORMALISM_TESTS_SYNTHETIC_HPP_
#define FORMALISM_TESTS_SYNTHETIC_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formalism/corpus.hpp"
#include "formalism/rng.hpp"

namespace formalism::testing {

// "w0 w1 ... w{n-1}": exactly n whitespace tokens.
std::string words(std::size_t n);

Document make_doc(std::string id, Court court, int year,
                  std::optional<HolisticLabel> label,
                  std::vector<std::pair<std::string, ArgumentSet>> paragraphs);

// Twenty documents with hand-countable annotations:
//   doc i (0..19): court SC for i < 12, SAC otherwise; decided 1 June 2005+i;
//   non-formalistic iff i % 3 == 0;
//   p0 = {CL} (3 tokens), p1 = {type i % 8} (5 tokens),
//   p2 = {PL, TI} if i % 5 == 0 else {} (10 tokens).
Corpus fixture20();

// n documents, one argument per argumentative paragraph, labeled
// non-formalistic iff the PL relative frequency exceeds 20 percent. PL
// shares within 5 points of the threshold are never generated.
Corpus pl_threshold_corpus(std::size_t n, std::uint64_t seed);

// Labeled corpus with the given (label, court) stratum sizes, ordered
// (F,SC), (F,SAC), (NF,SC), (NF,SAC) interleaved to avoid trivial order.
Corpus strata_corpus(std::size_t f_sc, std::size_t f_sac, std::size_t nf_sc,
                     std::size_t nf_sac);

std::vector<ArgumentSet> random_sets(std::size_t n, Rng& rng, double density);

// Directory of the mock backend executable (set by the build).
std::filesystem::path mock_backend_path();

// Unique scratch directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace formalism::testing

#endif  // FORMALISM_TESTS_SYNTHETIC_HPP_
