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

// Multilingual term-pair store.
//
// On-disk format is UTF-8 TSV, one entry per line:
//   src_lang <TAB> tgt_lang <TAB> tgt_script <TAB> src_term <TAB> tgt_term
// Lines starting with '#' and blank lines are ignored.

#ifndef LEXAUG_LEXICON_H_
#define LEXAUG_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lexaug/corpus.h"

namespace lexaug {

inline constexpr std::string_view kPanlexSource = "panlex";
inline constexpr std::string_view kGatitosSource = "gatitos";

struct LexEntry {
  std::string src_term;
  std::string tgt_term;
  std::string src_lang;
  std::string tgt_lang;
  std::string tgt_script;
  // Which lexicon the entry came from; not part of the dedup key.
  std::string source_name;

  bool operator==(const LexEntry&) const = default;
};

// Case-folded tokens of `term` joined by single spaces. Two strings match in
// the lexicon iff their normalized forms are equal.
std::string NormalizeTerm(std::string_view term);

struct EntryCounts {
  std::uint64_t panlex = 0;
  std::uint64_t gatitos = 0;
  // Entries from any other source_name.
  std::uint64_t other = 0;

  bool operator==(const EntryCounts&) const = default;
};

using EntryId = std::uint32_t;

class Lexicon {
 public:
  using PairCounts = std::map<std::pair<std::string, std::string>, std::uint64_t>;

  // Validates and inserts `entry`. Returns false if an entry with the same
  // (src_lang, tgt_lang, tgt_script, src_term, tgt_term) is already stored.
  bool Add(LexEntry entry);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<LexEntry>& entries() const { return entries_; }
  const LexEntry& entry(EntryId id) const { return entries_[id]; }

  // Entries whose source term matches `term` after normalization, optionally
  // restricted to one target language. Ordered by (tgt_lang, tgt_term), ties
  // in insertion order.
  std::vector<const LexEntry*> Lookup(
      std::string_view term, std::string_view src_lang,
      std::optional<std::string_view> tgt_filter = std::nullopt) const;

  // Same as Lookup but takes an already-normalized key and returns ids.
  std::span<const EntryId> FindNormalized(std::string_view src_lang,
                                          std::string_view key) const;

  // Longest source term, in tokens, stored for `src_lang` (0 if none).
  std::size_t MaxPhraseTokens(std::string_view src_lang) const;

  // (src_lang, tgt_lang) -> number of stored entries.
  const PairCounts& pair_counts() const { return pair_counts_; }

  // Entries with src_lang or tgt_lang equal to `lang`, split by source.
  EntryCounts CountsFor(std::string_view lang) const;

  bool operator==(const Lexicon& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<LexEntry> entries_;
  std::unordered_set<std::string> dedup_;
  std::unordered_map<std::string, std::vector<EntryId>> index_;
  std::unordered_map<std::string, std::size_t> max_phrase_tokens_;
  PairCounts pair_counts_;
};

// Parses TSV from `in`. `source_label` prefixes error messages.
Lexicon ParseLexicon(std::istream& in, std::string_view source_name,
                     ErrorPolicy policy = ErrorPolicy::kAbort,
                     std::string_view source_label = "<stream>");

Lexicon LoadLexicon(const std::string& path, std::string_view source_name,
                    ErrorPolicy policy = ErrorPolicy::kAbort);

void WriteLexicon(const Lexicon& lex, std::ostream& out);

// Union of both lexica. On duplicates the entry from `a` is kept.
Lexicon Merge(const Lexicon& a, const Lexicon& b);

// Keeps entries whose src_lang or tgt_lang is in `langs`.
Lexicon FilterLanguages(const Lexicon& lex, const std::set<std::string>& langs);

}  // namespace lexaug

#endif  // LEXAUG_LEXICON_H_
