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

#include "formalism/argument_type.hpp"

namespace formalism {
namespace {

constexpr std::array<std::string_view, kNumArgumentTypes> kCodes{
    "LIN", "SI", "CL", "D", "HI", "PL", "TI", "PC"};

}  // namespace

std::string_view code_of(ArgumentType t) { return kCodes[index_of(t)]; }

std::optional<ArgumentType> parse_argument_type(std::string_view code) {
  for (std::size_t i = 0; i < kCodes.size(); ++i) {
    if (kCodes[i] == code) return kAllArgumentTypes[i];
  }
  return std::nullopt;
}

std::size_t ArgumentSet::count(ArgumentGroup g) const {
  std::size_t n = 0;
  for (auto t : kAllArgumentTypes) {
    if (contains(t) && group_of(t) == g) ++n;
  }
  return n;
}

std::string_view to_string(HolisticLabel l) {
  return l == HolisticLabel::kFormalistic ? "formalistic" : "non_formalistic";
}

std::optional<HolisticLabel> parse_holistic_label(std::string_view s) {
  if (s == "formalistic") return HolisticLabel::kFormalistic;
  if (s == "non_formalistic") return HolisticLabel::kNonFormalistic;
  return std::nullopt;
}

std::string_view to_string(Court c) { return c == Court::SC ? "SC" : "SAC"; }

std::optional<Court> parse_court(std::string_view s) {
  if (s == "SC") return Court::SC;
  if (s == "SAC") return Court::SAC;
  return std::nullopt;
}

}  // namespace formalism
