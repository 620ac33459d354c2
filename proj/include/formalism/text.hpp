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

// UTF-8 helpers: whitespace tokenization and simple case folding.

#ifndef FORMALISM_TEXT_HPP_
#define FORMALISM_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace formalism {

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte at
// a time, so every input decodes.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

// Unicode White_Space property.
bool is_unicode_whitespace(char32_t c);

// Number of maximal runs of non-whitespace code points.
std::size_t token_count(std::string_view text);

// True when the text contains at least one non-whitespace code point.
bool has_visible_text(std::string_view text);

// Simple (one-to-one) lowercase folding for Latin, Greek and Cyrillic.
char32_t fold_case(char32_t c);
std::u32string fold_case(std::u32string_view s);

}  // namespace formalism

#endif  // FORMALISM_TEXT_HPP_
