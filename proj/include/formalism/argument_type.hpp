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

#ifndef FORMALISM_ARGUMENT_TYPE_HPP_
#define FORMALISM_ARGUMENT_TYPE_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace formalism {

// The eight-code argument inventory. Declaration order is the canonical order
// used by feature vectors, reports and CSV columns.
enum class ArgumentType : std::uint8_t { LIN, SI, CL, D, HI, PL, TI, PC };

inline constexpr std::size_t kNumArgumentTypes = 8;

inline constexpr std::array<ArgumentType, kNumArgumentTypes> kAllArgumentTypes{
    ArgumentType::LIN, ArgumentType::SI, ArgumentType::CL, ArgumentType::D,
    ArgumentType::HI,  ArgumentType::PL, ArgumentType::TI, ArgumentType::PC};

enum class ArgumentGroup : std::uint8_t { kFormalistic, kNonFormalistic };

constexpr ArgumentGroup group_of(ArgumentType t) {
  switch (t) {
    case ArgumentType::LIN:
    case ArgumentType::SI:
    case ArgumentType::CL:
    case ArgumentType::D:
      return ArgumentGroup::kFormalistic;
    default:
      return ArgumentGroup::kNonFormalistic;
  }
}

constexpr std::size_t index_of(ArgumentType t) {
  return static_cast<std::size_t>(t);
}

std::string_view code_of(ArgumentType t);
std::optional<ArgumentType> parse_argument_type(std::string_view code);

// A set of argument types stored as a bitmask; each code at most once.
class ArgumentSet {
 public:
  constexpr ArgumentSet() = default;
  constexpr explicit ArgumentSet(std::uint8_t bits) : bits_(bits) {}
  ArgumentSet(std::initializer_list<ArgumentType> types) {
    for (auto t : types) insert(t);
  }

  constexpr void insert(ArgumentType t) { bits_ |= bit(t); }
  constexpr void erase(ArgumentType t) {
    bits_ &= static_cast<std::uint8_t>(~bit(t));
  }
  constexpr bool contains(ArgumentType t) const { return bits_ & bit(t); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(__builtin_popcount(bits_));
  }
  constexpr std::uint8_t bits() const { return bits_; }

  // Number of members belonging to the given group.
  std::size_t count(ArgumentGroup g) const;

  friend constexpr bool operator==(ArgumentSet, ArgumentSet) = default;

 private:
  static constexpr std::uint8_t bit(ArgumentType t) {
    return static_cast<std::uint8_t>(1u << index_of(t));
  }
  std::uint8_t bits_ = 0;
};

enum class HolisticLabel : std::uint8_t { kFormalistic, kNonFormalistic };

std::string_view to_string(HolisticLabel l);
std::optional<HolisticLabel> parse_holistic_label(std::string_view s);

enum class Court : std::uint8_t { SC, SAC };

std::string_view to_string(Court c);
std::optional<Court> parse_court(std::string_view s);

}  // namespace formalism

#endif  // FORMALISM_ARGUMENT_TYPE_HPP_
