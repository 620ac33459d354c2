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

#include "formalism/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "formalism/rng.hpp"

namespace formalism {
namespace {

// Quotas like 45 * 0.7 land a few ulps off the exact value; anything closer
// than this counts as equal.
constexpr double kQuotaTolerance = 1e-9;

void check_ratios(const SplitRatios& r) {
  for (auto p : kAllSplitParts) {
    if (!(r[p] >= 0.0) || !std::isfinite(r[p])) {
      throw ValidationError("split ratios must be finite and non-negative");
    }
  }
  double sum = r.train + r.validation + r.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError(
        fmt::format("split ratios must sum to 1 (got {:.12g})", sum));
  }
}

}  // namespace

std::string_view to_string(SplitPart p) {
  switch (p) {
    case SplitPart::kTrain:
      return "train";
    case SplitPart::kValidation:
      return "validation";
    default:
      return "test";
  }
}

std::optional<SplitPart> parse_split_part(std::string_view s) {
  for (auto p : kAllSplitParts) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

double SplitRatios::operator[](SplitPart p) const {
  switch (p) {
    case SplitPart::kTrain:
      return train;
    case SplitPart::kValidation:
      return validation;
    default:
      return test;
  }
}

void SplitAssignment::assign(std::string doc_id, SplitPart part) {
  auto [it, inserted] = index_.emplace(doc_id, part);
  if (!inserted) {
    throw ValidationError(
        fmt::format("doc_id '{}' assigned to more than one split", doc_id));
  }
  order_.emplace_back(std::move(doc_id), part);
}

std::optional<SplitPart> SplitAssignment::part_of(std::string_view doc_id) const {
  auto it = index_.find(doc_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SplitAssignment::count(SplitPart part) const {
  return static_cast<std::size_t>(
      std::count_if(order_.begin(), order_.end(),
                    [&](const auto& e) { return e.second == part; }));
}

std::array<std::size_t, 3> allocate_counts(std::size_t n,
                                           const SplitRatios& ratios) {
  check_ratios(ratios);
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    double quota = static_cast<double>(n) * ratios[kAllSplitParts[i]];
    double whole = std::floor(quota + kQuotaTolerance);
    counts[i] = static_cast<std::size_t>(whole);
    remainders[i] = std::max(0.0, quota - whole);
    assigned += counts[i];
  }
  // Ratios summing to 1 within 1e-9 can push the floors one past n.
  while (assigned > n) {
    --*std::max_element(counts.begin(), counts.end());
    --assigned;
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(remainders[a] - remainders[b]) > kQuotaTolerance) {
      return remainders[a] > remainders[b];
    }
    return ratios[kAllSplitParts[a]] < ratios[kAllSplitParts[b]];
  });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) {
    ++counts[order[k % 3]];
  }
  return counts;
}

SplitAssignment stratified_split(const Corpus& corpus,
                                 const SplitRatios& ratios,
                                 std::uint64_t seed) {
  check_ratios(ratios);
  std::vector<std::string> unlabeled;
  for (const auto& d : corpus.documents) {
    if (!d.holistic_label) unlabeled.push_back(d.doc_id);
  }
  if (!unlabeled.empty()) {
    std::string ids;
    for (const auto& id : unlabeled) ids += (ids.empty() ? "" : ", ") + id;
    throw ValidationError("documents without holistic label: " + ids);
  }

  // Strata in fixed order: label-major, court-minor.
  std::array<std::vector<std::size_t>, 4> strata;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& d = corpus.documents[i];
    std::size_t s = static_cast<std::size_t>(*d.holistic_label) * 2 +
                    static_cast<std::size_t>(d.court);
    strata[s].push_back(i);
  }

  Rng rng(seed);
  std::vector<SplitPart> part_of(corpus.documents.size(), SplitPart::kTrain);
  for (auto& members : strata) {
    rng.shuffle(std::span<std::size_t>(members));
    auto counts = allocate_counts(members.size(), ratios);
    std::size_t pos = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t k = 0; k < counts[p]; ++k) {
        part_of[members[pos++]] = kAllSplitParts[p];
      }
    }
  }

  SplitAssignment out;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    out.assign(corpus.documents[i].doc_id, part_of[i]);
  }
  return out;
}

void write_split(std::ostream& out, const SplitAssignment& split) {
  out << "doc_id,split\n";
  for (const auto& [id, part] : split.entries()) {
    out << id << ',' << to_string(part) << '\n';
  }
}

SplitAssignment read_split(std::istream& in) {
  SplitAssignment split;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "doc_id,split") {
        throw ParseError(line_no, "expected header 'doc_id,split'");
      }
      continue;
    }
    if (line.empty()) continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos || comma == 0) {
      throw ParseError(line_no, "expected 'doc_id,split'");
    }
    auto part = parse_split_part(std::string_view(line).substr(comma + 1));
    if (!part) {
      throw ParseError(line_no, fmt::format("unknown split '{}'",
                                            line.substr(comma + 1)));
    }
    try {
      split.assign(line.substr(0, comma), *part);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (line_no == 0) throw ParseError(1, "empty split file");
  return split;
}

SplitAssignment load_split(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError(fmt::format("cannot open split file '{}'",
                                      path.string()));
  }
  return read_split(in);
}

void save_split(const std::filesystem::path& path,
                const SplitAssignment& split) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError(fmt::format("cannot write split file '{}'",
                                      path.string()));
  }
  write_split(out, split);
}

Corpus select_part(const Corpus& corpus, const SplitAssignment& split,
                   SplitPart part) {
  Corpus out;
  out.provenance = corpus.provenance;
  for (const auto& d : corpus.documents) {
    auto p = split.part_of(d.doc_id);
    if (!p) {
      throw ValidationError(
          fmt::format("document '{}' missing from split file", d.doc_id));
    }
    if (*p == part) out.documents.push_back(d);
  }
  return out;
}

}  // namespace formalism
