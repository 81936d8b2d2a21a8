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

#include "lexaug/corpus.h"

#include <utility>

#include "json.hpp"
#include "lexaug/error.h"
#include "lexaug/sampling.h"
#include "lexaug/unicode.h"

namespace lexaug {
namespace {

constexpr std::size_t kMaxSkippedMessages = 100;

// Domain separator so branch hashes are unrelated to per-record RNG streams.
constexpr std::uint64_t kBranchDomain = 0x6272616e63680001ULL;

std::string RequireString(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kParse, std::string("missing field \"") + key + "\"");
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::kParse,
                std::string("field \"") + key + "\" is not a string");
  }
  return it->get<std::string>();
}

Record ParseSide(const nlohmann::json& obj, const char* side) {
  auto it = obj.find(side);
  if (it == obj.end() || !it->is_object()) {
    throw Error(ErrorCode::kParse,
                std::string("missing object field \"") + side + "\"");
  }
  Record r;
  r.lang = RequireString(*it, "lang");
  r.script = RequireString(*it, "script");
  r.text = RequireString(*it, "text");
  return r;
}

std::uint64_t ParseId(const nlohmann::json& obj, std::uint64_t fallback) {
  auto it = obj.find("id");
  if (it == obj.end()) return fallback;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(it->get<std::int64_t>());
  }
  throw Error(ErrorCode::kParse, "field \"id\" is not a non-negative integer");
}

}  // namespace

void ValidateRecord(const Record& record) {
  if (record.lang.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "record has empty lang");
  }
  if (record.script.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "record has empty script");
  }
  if (unicode::Trim(record.text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "record has empty text");
  }
}

void ValidatePair(const SentencePair& pair) {
  ValidateRecord(pair.src);
  ValidateRecord(pair.tgt);
  if (pair.src.lang == pair.tgt.lang) {
    throw Error(ErrorCode::kInvalidArgument,
                "parallel pair has src.lang == tgt.lang (" + pair.src.lang +
                    ")");
  }
}

TokenizedSentence::TokenizedSentence(std::string text,
                                     std::vector<TokenSpan> spans)
    : text_(std::move(text)), spans_(std::move(spans)) {}

std::string_view TokenizedSentence::surface(std::size_t i) const {
  const TokenSpan& s = spans_.at(i);
  return std::string_view(text_).substr(s.begin, s.end - s.begin);
}

std::string_view TokenizedSentence::surface(std::size_t first,
                                            std::size_t last) const {
  const std::size_t begin = spans_.at(first).begin;
  const std::size_t end = spans_.at(last - 1).end;
  return std::string_view(text_).substr(begin, end - begin);
}

std::string TokenizedSentence::Detokenize() const {
  std::string out;
  out.reserve(text_.size());
  std::size_t cursor = 0;
  const std::string_view text(text_);
  for (const TokenSpan& s : spans_) {
    out.append(text.substr(cursor, s.begin - cursor));
    out.append(text.substr(s.begin, s.end - s.begin));
    cursor = s.end;
  }
  out.append(text.substr(cursor));
  return out;
}

TokenizedSentence Tokenize(std::string_view text) {
  return TokenizeWithSpecials(text, {});
}

TokenizedSentence TokenizeWithSpecials(std::string_view text,
                                       std::span<const std::string> specials) {
  std::vector<TokenSpan> spans;
  std::size_t pos = 0;
  bool in_word = false;
  std::size_t word_begin = 0;
  while (pos < text.size()) {
    bool matched_special = false;
    for (const std::string& sp : specials) {
      if (!sp.empty() && text[pos] == sp[0] &&
          text.substr(pos, sp.size()) == sp) {
        if (in_word) {
          spans.push_back({word_begin, pos});
          in_word = false;
        }
        spans.push_back({pos, pos + sp.size()});
        pos += sp.size();
        matched_special = true;
        break;
      }
    }
    if (matched_special) continue;
    const std::size_t start = pos;
    const char32_t cp = unicode::DecodeNext(text, pos);
    if (unicode::IsWordChar(cp)) {
      if (!in_word) {
        in_word = true;
        word_begin = start;
      }
    } else if (in_word) {
      spans.push_back({word_begin, start});
      in_word = false;
    }
  }
  if (in_word) spans.push_back({word_begin, text.size()});
  return TokenizedSentence(std::string(text), std::move(spans));
}

Branch AssignBranch(std::uint64_t record_id, std::uint64_t seed,
                    double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "augment fraction must lie in [0, 1]");
  }
  const double u = ToUnitInterval(StableHash(seed ^ kBranchDomain, record_id));
  return u < fraction ? Branch::kAugment : Branch::kVanilla;
}

CorpusItem ParseCorpusLine(std::string_view line, CorpusKind kind,
                           std::uint64_t line_index) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorCode::kParse, "line is not a JSON object");
  }
  const std::uint64_t id = ParseId(obj, line_index);
  try {
    if (kind == CorpusKind::kMono) {
      Record r;
      r.id = id;
      r.lang = RequireString(obj, "lang");
      r.script = RequireString(obj, "script");
      r.text = RequireString(obj, "text");
      ValidateRecord(r);
      return r;
    }
    SentencePair p;
    p.id = id;
    p.src = ParseSide(obj, "src");
    p.tgt = ParseSide(obj, "tgt");
    p.src.id = p.tgt.id = id;
    ValidatePair(p);
    return p;
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

CorpusReader::CorpusReader(std::istream& in, CorpusKind kind,
                           ErrorPolicy policy, std::string source_name)
    : in_(&in),
      kind_(kind),
      policy_(policy),
      source_name_(std::move(source_name)) {}

std::unique_ptr<CorpusReader> CorpusReader::Open(const std::string& path,
                                                 CorpusKind kind,
                                                 ErrorPolicy policy) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw Error(ErrorCode::kIo, "cannot open corpus " + path);
  auto reader = std::make_unique<CorpusReader>(*file, kind, policy, path);
  reader->owned_ = std::move(file);
  return reader;
}

std::optional<CorpusItem> CorpusReader::Next() {
  while (std::getline(*in_, line_)) {
    const std::uint64_t index = line_index_++;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (line_.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      return ParseCorpusLine(line_, kind_, index);
    } catch (const Error& e) {
      const std::string message = source_name_ + ":" +
                                  std::to_string(index + 1) + ": " + e.what();
      if (policy_ == ErrorPolicy::kAbort) {
        throw Error(ErrorCode::kParse, message, index + 1);
      }
      ++skipped_;
      if (skipped_messages_.size() < kMaxSkippedMessages) {
        skipped_messages_.push_back(message);
      }
    }
  }
  return std::nullopt;
}

std::vector<CorpusItem> LoadCorpus(const std::string& path, CorpusKind kind,
                                   ErrorPolicy policy) {
  auto reader = CorpusReader::Open(path, kind, policy);
  std::vector<CorpusItem> items;
  while (auto item = reader->Next()) items.push_back(std::move(*item));
  return items;
}

}  // namespace lexaug
