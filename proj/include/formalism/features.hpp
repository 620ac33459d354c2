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

// Document-level feature vectors built from argument annotations, and the
// standardizing scaler fitted on training vectors.

#ifndef FORMALISM_FEATURES_HPP_
#define FORMALISM_FEATURES_HPP_

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "formalism/argument_type.hpp"
#include "formalism/corpus.hpp"

namespace formalism {

inline constexpr std::size_t kNumFeatures = 3 + kNumArgumentTypes;

// Component order: doc_length_tokens, n_arguments,
// avg_argument_length_tokens, then the relative frequency (percent) of each
// argument type in inventory order.
struct FeatureVector {
  std::array<double, kNumFeatures> values{};

  double doc_length_tokens() const { return values[0]; }
  double n_arguments() const { return values[1]; }
  double avg_argument_length_tokens() const { return values[2]; }
  double rel_freq(ArgumentType t) const { return values[3 + index_of(t)]; }

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

const std::array<std::string_view, kNumFeatures>& feature_names();

// Arguments are the paragraph type sets of the document as given (gold or
// predicted). Average argument length is the mean token count of paragraphs
// carrying at least one argument.
FeatureVector extract_features(const Document& doc);

// Binary training target: non-formalistic is the positive class.
struct LabeledVector {
  FeatureVector x;
  bool non_formalistic = false;
};

// Requires every document to carry a holistic label.
std::vector<LabeledVector> labeled_features(const Corpus& corpus);

// Per-component standardization: (x - mean) / scale.
class Scaler {
 public:
  Scaler() { scale_.fill(1.0); }
  Scaler(std::array<double, kNumFeatures> mean,
         std::array<double, kNumFeatures> scale);

  // Population mean and standard deviation; degenerate components get
  // scale 1. Throws ValidationError on an empty training set.
  static Scaler fit(std::span<const FeatureVector> train);

  std::array<double, kNumFeatures> apply(const FeatureVector& v) const;
  FeatureVector invert(std::span<const double, kNumFeatures> scaled) const;

  const std::array<double, kNumFeatures>& mean() const { return mean_; }
  const std::array<double, kNumFeatures>& scale() const { return scale_; }

 private:
  std::array<double, kNumFeatures> mean_{};
  std::array<double, kNumFeatures> scale_{};
};

// CSV: header "doc_id,<feature names>", one row per document.
void write_features_csv(std::ostream& out, const Corpus& corpus);

struct NamedFeatures {
  std::string doc_id;
  FeatureVector x;
};
std::vector<NamedFeatures> read_features_csv(std::istream& in);

}  // namespace formalism

#endif  // FORMALISM_FEATURES_HPP_
