// Copyright 2026 The Lexaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal UTF-8 and Unicode property helpers. The property tables are
// generated from the Unicode database by tools/gen_unicode_tables.py.

#ifndef LEXAUG_UNICODE_H_
#define LEXAUG_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace lexaug::unicode {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes one code point starting at `text[pos]` and advances `pos`.
// Malformed sequences decode to U+FFFD and consume a single byte.
char32_t DecodeNext(std::string_view text, std::size_t& pos);

void AppendUtf8(char32_t cp, std::string& out);

bool IsValidUtf8(std::string_view text);

std::u32string ToCodepoints(std::string_view text);

// Letters, marks and numbers (general categories L*, M*, N*).
bool IsWordChar(char32_t cp);
// Punctuation and symbols (general categories P*, S*).
bool IsPunctOrSymbol(char32_t cp);
// The White_Space set used by Python's str.split().
bool IsWhitespace(char32_t cp);

// Full Unicode case folding (e.g. "Straße" -> "strasse").
std::string CaseFold(std::string_view text);

// Strips leading and trailing Unicode whitespace.
std::string_view Trim(std::string_view text);

}  // namespace lexaug::unicode

#endif  // LEXAUG_UNICODE_H_
