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

#include "formalism/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "formalism/text.hpp"

namespace formalism {

const std::array<std::string_view, kNumFeatures>& feature_names() {
  static const std::array<std::string_view, kNumFeatures> names{
      "doc_length_tokens", "n_arguments", "avg_argument_length_tokens",
      "LIN", "SI", "CL", "D", "HI", "PL", "TI", "PC"};
  return names;
}

FeatureVector extract_features(const Document& doc) {
  FeatureVector f;
  std::array<std::size_t, kNumArgumentTypes> per_type{};
  std::size_t doc_tokens = 0;
  std::size_t n_arguments = 0;
  std::size_t arg_paragraph_tokens = 0;
  std::size_t arg_paragraphs = 0;
  for (const auto& p : doc.paragraphs) {
    auto tokens = token_count(p.text);
    doc_tokens += tokens;
    if (p.argument_types.empty()) continue;
    ++arg_paragraphs;
    arg_paragraph_tokens += tokens;
    n_arguments += p.argument_types.size();
    for (auto t : kAllArgumentTypes) {
      if (p.argument_types.contains(t)) ++per_type[index_of(t)];
    }
  }
  f[0] = static_cast<double>(doc_tokens);
  f[1] = static_cast<double>(n_arguments);
  if (arg_paragraphs > 0) {
    f[2] = static_cast<double>(arg_paragraph_tokens) /
           static_cast<double>(arg_paragraphs);
  }
  if (n_arguments > 0) {
    for (std::size_t i = 0; i < kNumArgumentTypes; ++i) {
      f[3 + i] = 100.0 * static_cast<double>(per_type[i]) /
                 static_cast<double>(n_arguments);
    }
  }
  return f;
}

std::vector<LabeledVector> labeled_features(const Corpus& corpus) {
  std::vector<LabeledVector> out;
  out.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) {
    if (!d.holistic_label) {
      throw ValidationError(
          fmt::format("document '{}' has no holistic label", d.doc_id));
    }
    out.push_back({extract_features(d),
                   *d.holistic_label == HolisticLabel::kNonFormalistic});
  }
  return out;
}

Scaler::Scaler(std::array<double, kNumFeatures> mean,
               std::array<double, kNumFeatures> scale)
    : mean_(mean), scale_(scale) {
  for (double s : scale_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ValidationError("scaler scale parameters must be positive");
    }
  }
}

Scaler Scaler::fit(std::span<const FeatureVector> train) {
  if (train.empty()) throw ValidationError("cannot fit scaler on empty set");
  std::array<double, kNumFeatures> mean{};
  std::array<double, kNumFeatures> scale{};
  const auto n = static_cast<double>(train.size());
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    double sum = 0.0;
    for (const auto& v : train) sum += v[j];
    mean[j] = sum / n;
    double ss = 0.0;
    for (const auto& v : train) ss += (v[j] - mean[j]) * (v[j] - mean[j]);
    double sd = std::sqrt(ss / n);
    // A constant column can leave rounding residue in sd.
    bool degenerate = !(sd > 1e-12 * std::max(1.0, std::abs(mean[j])));
    scale[j] = degenerate ? 1.0 : sd;
  }
  return Scaler(mean, scale);
}

std::array<double, kNumFeatures> Scaler::apply(const FeatureVector& v) const {
  std::array<double, kNumFeatures> out{};
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    out[j] = (v[j] - mean_[j]) / scale_[j];
  }
  return out;
}

FeatureVector Scaler::invert(std::span<const double, kNumFeatures> scaled) const {
  FeatureVector v;
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    v[j] = scaled[j] * scale_[j] + mean_[j];
  }
  return v;
}

void write_features_csv(std::ostream& out, const Corpus& corpus) {
  out << "doc_id";
  for (auto name : feature_names()) out << ',' << name;
  out << '\n';
  for (const auto& d : corpus.documents) {
    auto f = extract_features(d);
    out << d.doc_id;
    for (double v : f.values) out << ',' << fmt::format("{}", v);
    out << '\n';
  }
}

std::vector<NamedFeatures> read_features_csv(std::istream& in) {
  std::vector<NamedFeatures> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      std::string expected = "doc_id";
      for (auto name : feature_names()) expected += fmt::format(",{}", name);
      if (line != expected) {
        throw ParseError(line_no, "unexpected features header");
      }
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != kNumFeatures + 1) {
      throw ParseError(line_no, fmt::format("expected {} columns, got {}",
                                            kNumFeatures + 1, cells.size()));
    }
    NamedFeatures row;
    row.doc_id = cells[0];
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      const auto& c = cells[j + 1];
      double v = 0.0;
      auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || p != c.data() + c.size() || !std::isfinite(v)) {
        throw ParseError(line_no, fmt::format("bad number '{}'", c));
      }
      row.x[j] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace formalism
