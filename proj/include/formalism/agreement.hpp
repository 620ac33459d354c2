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

// Chance-corrected inter-annotator agreement: Cohen's kappa for two coders
// and Krippendorff's alpha (nominal distance) for two or more.

#ifndef FORMALISM_AGREEMENT_HPP_
#define FORMALISM_AGREEMENT_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formalism/argument_type.hpp"
#include "formalism/corpus.hpp"

namespace formalism {

// Categories are small non-negative integers; the declared set is
// [0, num_categories).
using Category = int;

// Units x annotators table with missing values.
class AnnotationMatrix {
 public:
  AnnotationMatrix(std::size_t num_units, std::size_t num_annotators,
                   int num_categories);

  void set(std::size_t unit, std::size_t annotator, std::optional<Category> v);
  std::optional<Category> get(std::size_t unit, std::size_t annotator) const;

  std::size_t num_units() const { return num_units_; }
  std::size_t num_annotators() const { return num_annotators_; }
  int num_categories() const { return num_categories_; }

  // Values present for one unit.
  std::vector<Category> unit_values(std::size_t unit) const;
  // Units with at least two values.
  std::size_t pairable_units() const;

 private:
  std::size_t num_units_;
  std::size_t num_annotators_;
  int num_categories_;
  std::vector<std::optional<Category>> cells_;
};

// Throws ValidationError on length mismatch or empty input.
double cohen_kappa(std::span<const Category> a, std::span<const Category> b);

// Nominal alpha from the coincidence matrix. Throws ValidationError when
// fewer than two pairable values exist. Returns 1 when every pairable value
// is identical (no expected disagreement).
double krippendorff_alpha(const AnnotationMatrix& m);

struct TypeAgreement {
  ArgumentType type;
  double alpha;
  std::size_t pairable_units;
};

// Binary presence matrix per argument type over paragraphs, one column per
// corpus. Throws ValidationError if doc/para ids differ.
std::vector<TypeAgreement> per_type_agreement(const Corpus& a, const Corpus& b);

struct HolisticAgreement {
  double kappa;
  std::size_t units;
};

// Kappa over documents labeled in both corpora.
HolisticAgreement holistic_agreement(const Corpus& a, const Corpus& b);

}  // namespace formalism

#endif  // FORMALISM_AGREEMENT_HPP_
