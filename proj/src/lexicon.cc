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

#include "lexaug/lexicon.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <tuple>

#include "lexaug/error.h"
#include "lexaug/unicode.h"

namespace lexaug {
namespace {

constexpr char kKeySep = '\x1f';

std::string IndexKey(std::string_view src_lang, std::string_view normalized) {
  std::string key;
  key.reserve(src_lang.size() + 1 + normalized.size());
  key.append(src_lang);
  key.push_back(kKeySep);
  key.append(normalized);
  return key;
}

std::string DedupKey(const LexEntry& e) {
  std::string key;
  for (const std::string* f :
       {&e.src_lang, &e.tgt_lang, &e.tgt_script, &e.src_term, &e.tgt_term}) {
    key.append(*f);
    key.push_back('\t');
  }
  return key;
}

void ValidateEntry(const LexEntry& e) {
  if (e.src_term.empty() || e.tgt_term.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty term");
  }
  if (e.src_lang.empty() || e.tgt_lang.empty() || e.tgt_script.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty language or script");
  }
  if (e.src_lang == e.tgt_lang) {
    throw Error(ErrorCode::kInvalidArgument,
                "src_lang equals tgt_lang (" + e.src_lang + ")");
  }
}

LexEntry ParseLine(std::string_view line, std::string_view source_name) {
  if (!unicode::IsValidUtf8(line)) {
    throw Error(ErrorCode::kParse, "invalid UTF-8");
  }
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (cols.size() != 5) {
    throw Error(ErrorCode::kParse, "expected 5 tab-separated columns, got " +
                                       std::to_string(cols.size()));
  }
  LexEntry e;
  e.src_lang = std::string(unicode::Trim(cols[0]));
  e.tgt_lang = std::string(unicode::Trim(cols[1]));
  e.tgt_script = std::string(unicode::Trim(cols[2]));
  e.src_term = std::string(unicode::Trim(cols[3]));
  e.tgt_term = std::string(unicode::Trim(cols[4]));
  e.source_name = std::string(source_name);
  try {
    ValidateEntry(e);
  } catch (const Error& err) {
    throw Error(ErrorCode::kParse, err.what());
  }
  return e;
}

}  // namespace

std::string NormalizeTerm(std::string_view term) {
  const TokenizedSentence tokens = Tokenize(term);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out.append(unicode::CaseFold(tokens.surface(i)));
  }
  return out;
}

bool Lexicon::Add(LexEntry entry) {
  ValidateEntry(entry);
  if (!dedup_.insert(DedupKey(entry)).second) return false;
  if (entries_.size() >= std::numeric_limits<EntryId>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "lexicon too large");
  }
  const auto id = static_cast<EntryId>(entries_.size());
  const std::string normalized = NormalizeTerm(entry.src_term);
  const std::size_t n_tokens =
      normalized.empty() ? 0
                         : 1 + std::count(normalized.begin(), normalized.end(),
                                          ' ');
  std::size_t& max_tokens = max_phrase_tokens_[entry.src_lang];
  max_tokens = std::max(max_tokens, n_tokens);
  ++pair_counts_[{entry.src_lang, entry.tgt_lang}];
  entries_.push_back(std::move(entry));

  // Keep each bucket sorted by (tgt_lang, tgt_term); upper_bound keeps ties
  // in insertion order.
  auto& bucket = index_[IndexKey(entries_[id].src_lang, normalized)];
  auto less = [this](EntryId a, EntryId b) {
    return std::tie(entries_[a].tgt_lang, entries_[a].tgt_term) <
           std::tie(entries_[b].tgt_lang, entries_[b].tgt_term);
  };
  bucket.insert(std::upper_bound(bucket.begin(), bucket.end(), id, less), id);
  return true;
}

std::span<const EntryId> Lexicon::FindNormalized(std::string_view src_lang,
                                                 std::string_view key) const {
  auto it = index_.find(IndexKey(src_lang, key));
  if (it == index_.end()) return {};
  return it->second;
}

std::vector<const LexEntry*> Lexicon::Lookup(
    std::string_view term, std::string_view src_lang,
    std::optional<std::string_view> tgt_filter) const {
  std::vector<const LexEntry*> out;
  for (EntryId id : FindNormalized(src_lang, NormalizeTerm(term))) {
    const LexEntry& e = entries_[id];
    if (tgt_filter && e.tgt_lang != *tgt_filter) continue;
    out.push_back(&e);
  }
  return out;
}

std::size_t Lexicon::MaxPhraseTokens(std::string_view src_lang) const {
  auto it = max_phrase_tokens_.find(std::string(src_lang));
  return it == max_phrase_tokens_.end() ? 0 : it->second;
}

EntryCounts Lexicon::CountsFor(std::string_view lang) const {
  EntryCounts counts;
  for (const LexEntry& e : entries_) {
    if (e.src_lang != lang && e.tgt_lang != lang) continue;
    if (e.source_name == kPanlexSource) {
      ++counts.panlex;
    } else if (e.source_name == kGatitosSource) {
      ++counts.gatitos;
    } else {
      ++counts.other;
    }
  }
  return counts;
}

Lexicon ParseLexicon(std::istream& in, std::string_view source_name,
                     ErrorPolicy policy, std::string_view source_label) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    try {
      lex.Add(ParseLine(line, source_name));
    } catch (const Error& e) {
      if (policy == ErrorPolicy::kSkip) continue;
      throw Error(ErrorCode::kParse,
                  std::string(source_label) + ":" + std::to_string(line_no) +
                      ": " + e.what(),
                  line_no);
    }
  }
  return lex;
}

Lexicon LoadLexicon(const std::string& path, std::string_view source_name,
                    ErrorPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path);
  return ParseLexicon(in, source_name, policy, path);
}

void WriteLexicon(const Lexicon& lex, std::ostream& out) {
  for (const LexEntry& e : lex.entries()) {
    out << e.src_lang << '\t' << e.tgt_lang << '\t' << e.tgt_script << '\t'
        << e.src_term << '\t' << e.tgt_term << '\n';
  }
}

Lexicon Merge(const Lexicon& a, const Lexicon& b) {
  Lexicon out = a;
  for (const LexEntry& e : b.entries()) out.Add(e);
  return out;
}

Lexicon FilterLanguages(const Lexicon& lex,
                        const std::set<std::string>& langs) {
  Lexicon out;
  for (const LexEntry& e : lex.entries()) {
    if (langs.count(e.src_lang) || langs.count(e.tgt_lang)) out.Add(e);
  }
  return out;
}

}  // namespace lexaug
