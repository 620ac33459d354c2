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

#include "formalism/agreement.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "formalism/errors.hpp"

namespace formalism {

AnnotationMatrix::AnnotationMatrix(std::size_t num_units,
                                   std::size_t num_annotators,
                                   int num_categories)
    : num_units_(num_units),
      num_annotators_(num_annotators),
      num_categories_(num_categories),
      cells_(num_units * num_annotators) {
  if (num_annotators < 2) {
    throw ValidationError("annotation matrix needs at least 2 annotators");
  }
  if (num_categories < 1) {
    throw ValidationError("annotation matrix needs at least 1 category");
  }
}

void AnnotationMatrix::set(std::size_t unit, std::size_t annotator,
                           std::optional<Category> v) {
  if (v && (*v < 0 || *v >= num_categories_)) {
    throw ValidationError(fmt::format("category {} outside declared set [0, {})",
                                      *v, num_categories_));
  }
  cells_.at(unit * num_annotators_ + annotator) = v;
}

std::optional<Category> AnnotationMatrix::get(std::size_t unit,
                                              std::size_t annotator) const {
  return cells_.at(unit * num_annotators_ + annotator);
}

std::vector<Category> AnnotationMatrix::unit_values(std::size_t unit) const {
  std::vector<Category> out;
  for (std::size_t a = 0; a < num_annotators_; ++a) {
    if (auto v = get(unit, a)) out.push_back(*v);
  }
  return out;
}

std::size_t AnnotationMatrix::pairable_units() const {
  std::size_t n = 0;
  for (std::size_t u = 0; u < num_units_; ++u) {
    if (unit_values(u).size() >= 2) ++n;
  }
  return n;
}

double cohen_kappa(std::span<const Category> a, std::span<const Category> b) {
  if (a.size() != b.size()) {
    throw ValidationError(fmt::format(
        "kappa: sequences differ in length ({} vs {})", a.size(), b.size()));
  }
  if (a.empty()) throw ValidationError("kappa: empty input");
  std::map<Category, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
    if (a[i] == b[i]) ++agree;
  }
  const double n = static_cast<double>(a.size());
  const double p_o = static_cast<double>(agree) / n;
  double p_e = 0.0;
  for (const auto& [c, m] : marginals) {
    p_e += (static_cast<double>(m.first) / n) * (static_cast<double>(m.second) / n);
  }
  if (p_e >= 1.0) return 1.0;  // both coders used one identical category
  return (p_o - p_e) / (1.0 - p_e);
}

double krippendorff_alpha(const AnnotationMatrix& m) {
  const auto k = static_cast<std::size_t>(m.num_categories());
  std::vector<double> coincidence(k * k, 0.0);
  for (std::size_t u = 0; u < m.num_units(); ++u) {
    auto values = m.unit_values(u);
    if (values.size() < 2) continue;
    const double weight = 1.0 / static_cast<double>(values.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (i == j) continue;
        coincidence[static_cast<std::size_t>(values[i]) * k +
                    static_cast<std::size_t>(values[j])] += weight;
      }
    }
  }
  std::vector<double> marginal(k, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) marginal[c] += coincidence[c * k + d];
    n += marginal[c];
  }
  if (n < 2.0) {
    throw ValidationError("alpha: fewer than two pairable values");
  }
  double observed = 0.0;
  double expected = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      if (c == d) continue;
      observed += coincidence[c * k + d];
      expected += marginal[c] * marginal[d];
    }
  }
  if (expected == 0.0) return 1.0;
  return 1.0 - (n - 1.0) * observed / expected;
}

namespace {

struct ParagraphPair {
  ArgumentSet a;
  ArgumentSet b;
};

std::vector<ParagraphPair> match_paragraphs(const Corpus& a, const Corpus& b) {
  if (a.documents.size() != b.documents.size()) {
    throw ValidationError(fmt::format(
        "corpora differ in document count ({} vs {})", a.documents.size(),
        b.documents.size()));
  }
  std::unordered_map<std::string_view, const Document*> by_id;
  for (const auto& d : b.documents) by_id.emplace(d.doc_id, &d);

  std::vector<ParagraphPair> pairs;
  for (const auto& da : a.documents) {
    auto it = by_id.find(da.doc_id);
    if (it == by_id.end()) {
      throw ValidationError(
          fmt::format("document '{}' missing from second corpus", da.doc_id));
    }
    const Document& db = *it->second;
    if (da.paragraphs.size() != db.paragraphs.size()) {
      throw ValidationError(fmt::format(
          "document '{}' has {} vs {} paragraphs", da.doc_id,
          da.paragraphs.size(), db.paragraphs.size()));
    }
    std::unordered_map<std::string_view, ArgumentSet> b_types;
    for (const auto& p : db.paragraphs) b_types.emplace(p.para_id, p.argument_types);
    for (const auto& p : da.paragraphs) {
      auto pit = b_types.find(p.para_id);
      if (pit == b_types.end()) {
        throw ValidationError(fmt::format(
            "paragraph '{}' of document '{}' missing from second corpus",
            p.para_id, da.doc_id));
      }
      pairs.push_back({p.argument_types, pit->second});
    }
  }
  return pairs;
}

}  // namespace

std::vector<TypeAgreement> per_type_agreement(const Corpus& a,
                                              const Corpus& b) {
  auto pairs = match_paragraphs(a, b);
  std::vector<TypeAgreement> out;
  for (auto t : kAllArgumentTypes) {
    AnnotationMatrix m(pairs.size(), 2, 2);
    for (std::size_t u = 0; u < pairs.size(); ++u) {
      m.set(u, 0, pairs[u].a.contains(t) ? 1 : 0);
      m.set(u, 1, pairs[u].b.contains(t) ? 1 : 0);
    }
    out.push_back({t, krippendorff_alpha(m), pairs.size()});
  }
  return out;
}

HolisticAgreement holistic_agreement(const Corpus& a, const Corpus& b) {
  std::unordered_map<std::string_view, const Document*> by_id;
  for (const auto& d : b.documents) by_id.emplace(d.doc_id, &d);
  std::vector<Category> la, lb;
  for (const auto& da : a.documents) {
    auto it = by_id.find(da.doc_id);
    if (it == by_id.end() || !da.holistic_label || !it->second->holistic_label) {
      continue;
    }
    la.push_back(static_cast<Category>(*da.holistic_label));
    lb.push_back(static_cast<Category>(*it->second->holistic_label));
  }
  if (la.empty()) {
    throw ValidationError("no document carries a holistic label in both corpora");
  }
  return {cohen_kappa(la, lb), la.size()};
}

}  // namespace formalism
