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

#include "formalism/text.hpp"

#include <cstdint>

namespace formalism {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

// Pairs laid out as (upper, lower) on consecutive code points starting at an
// even or odd offset.
char32_t fold_pair(char32_t c, bool upper_is_even) {
  bool even = (c % 2) == 0;
  return even == upper_is_even ? c + 1 : c;
}

}  // namespace

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto b0 = static_cast<std::uint8_t>(s[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    }
    bool ok = len != 0 && i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      auto b = static_cast<std::uint8_t>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    if (ok && (cp < min || cp > 0x10FFFF || in(cp, 0xD800, 0xDFFF))) ok = false;
    if (ok) {
      out.push_back(cp);
      i += len;
    } else {
      out.push_back(kReplacement);
      ++i;
    }
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

bool is_unicode_whitespace(char32_t c) {
  return in(c, 0x0009, 0x000D) || c == 0x0020 || c == 0x0085 ||
         c == 0x00A0 || c == 0x1680 || in(c, 0x2000, 0x200A) ||
         c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

std::size_t token_count(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char32_t c : decode_utf8(text)) {
    bool ws = is_unicode_whitespace(c);
    if (!ws && !in_token) ++n;
    in_token = !ws;
  }
  return n;
}

bool has_visible_text(std::string_view text) { return token_count(text) > 0; }

char32_t fold_case(char32_t c) {
  if (c < 0x80) return in(c, 'A', 'Z') ? c + 32 : c;
  // Latin-1 Supplement
  if (in(c, 0x00C0, 0x00DE) && c != 0x00D7) return c + 32;
  if (c == 0x00B5) return 0x03BC;
  // Latin Extended-A
  if (in(c, 0x0100, 0x012F) || in(c, 0x0132, 0x0137) ||
      in(c, 0x014A, 0x0177)) {
    return fold_pair(c, true);
  }
  if (in(c, 0x0139, 0x0148) || in(c, 0x0179, 0x017E)) {
    return fold_pair(c, false);
  }
  if (c == 0x0178) return 0x00FF;
  if (c == 0x017F) return 's';
  // Latin Extended-B (pinyin vowels)
  if (in(c, 0x01CD, 0x01DC)) return fold_pair(c, false);
  // Greek
  if (in(c, 0x0391, 0x03A1) || in(c, 0x03A3, 0x03AB)) return c + 32;
  if (c == 0x0386) return 0x03AC;
  if (in(c, 0x0388, 0x038A)) return c + 37;
  if (c == 0x038C) return 0x03CC;
  if (in(c, 0x038E, 0x038F)) return c + 63;
  if (c == 0x03C2) return 0x03C3;
  // Cyrillic
  if (in(c, 0x0410, 0x042F)) return c + 32;
  if (in(c, 0x0400, 0x040F)) return c + 80;
  if (in(c, 0x0460, 0x0481) || in(c, 0x048A, 0x04BF) ||
      in(c, 0x04D0, 0x052F)) {
    return fold_pair(c, true);
  }
  if (c == 0x04C0) return 0x04CF;
  if (in(c, 0x04C1, 0x04CE)) return fold_pair(c, false);
  // Latin Extended Additional
  if (in(c, 0x1E00, 0x1E95) || in(c, 0x1EA0, 0x1EFF)) {
    return fold_pair(c, true);
  }
  if (c == 0x1E9E) return 0x00DF;
  return c;
}

std::u32string fold_case(std::u32string_view s) {
  std::u32string out(s);
  for (auto& c : out) c = fold_case(c);
  return out;
}

}  // namespace formalism
