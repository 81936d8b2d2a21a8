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

// Corpus records, word tokenization and the augment/vanilla split.
//
// Corpus files are JSON lines. Monolingual:
//   {"id"?: int, "lang": str, "script": str, "text": str}
// Parallel:
//   {"id"?: int, "src": {"lang", "script", "text"},
//    "tgt": {"lang", "script", "text"}}
// Records without an explicit id get their 0-based line number.

#ifndef LEXAUG_CORPUS_H_
#define LEXAUG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lexaug {

struct Record {
  std::uint64_t id = 0;
  std::string lang;
  std::string script;
  std::string text;

  bool operator==(const Record&) const = default;
};

struct SentencePair {
  std::uint64_t id = 0;
  Record src;
  Record tgt;

  bool operator==(const SentencePair&) const = default;
};

// Throws Error(kInvalidArgument) when an invariant does not hold.
void ValidateRecord(const Record& record);
void ValidatePair(const SentencePair& pair);

struct TokenSpan {
  std::size_t begin = 0;  // byte offsets into the original text
  std::size_t end = 0;
};

// A sentence plus the byte spans of its word tokens. Bytes between spans
// (whitespace, punctuation) are kept in `text()` so the sentence can always
// be reassembled exactly.
class TokenizedSentence {
 public:
  TokenizedSentence() = default;
  TokenizedSentence(std::string text, std::vector<TokenSpan> spans);

  const std::string& text() const { return text_; }
  std::size_t size() const { return spans_.size(); }
  bool empty() const { return spans_.empty(); }
  const std::vector<TokenSpan>& spans() const { return spans_; }
  std::string_view surface(std::size_t i) const;
  // Bytes from the start of token `first` to the end of token `last - 1`.
  std::string_view surface(std::size_t first, std::size_t last) const;

  std::string Detokenize() const;

 private:
  std::string text_;
  std::vector<TokenSpan> spans_;
};

// Tokens are maximal runs of Unicode letters, marks and numbers.
TokenizedSentence Tokenize(std::string_view text);

// As Tokenize, but each occurrence of a string in `specials` becomes a
// single atomic token. Used where sentinel tokens are mixed into text.
TokenizedSentence TokenizeWithSpecials(
    std::string_view text, std::span<const std::string> specials);

enum class Branch { kAugment, kVanilla };

// AUGMENT iff a stable hash of (seed, record_id) mapped to [0, 1) falls
// below `fraction`. Throws kInvalidArgument if fraction is outside [0, 1].
Branch AssignBranch(std::uint64_t record_id, std::uint64_t seed,
                    double fraction);

enum class CorpusKind { kMono, kParallel };
enum class ErrorPolicy { kAbort, kSkip };

using CorpusItem = std::variant<Record, SentencePair>;

// Parses one corpus line. `line_index` is 0-based and used as the default id.
CorpusItem ParseCorpusLine(std::string_view line, CorpusKind kind,
                           std::uint64_t line_index);

// Streams records from a JSON-lines corpus in file order. Blank lines are
// ignored. Malformed lines throw Error(kParse) carrying the 1-based line
// number unless the policy is kSkip, in which case they are counted and
// dropped.
class CorpusReader {
 public:
  CorpusReader(std::istream& in, CorpusKind kind,
               ErrorPolicy policy = ErrorPolicy::kAbort,
               std::string source_name = "<stream>");

  static std::unique_ptr<CorpusReader> Open(
      const std::string& path, CorpusKind kind,
      ErrorPolicy policy = ErrorPolicy::kAbort);

  std::optional<CorpusItem> Next();

  CorpusKind kind() const { return kind_; }
  const std::string& source_name() const { return source_name_; }
  // 1-based line number of the most recently returned item.
  std::size_t line_number() const { return line_index_; }
  std::size_t skipped() const { return skipped_; }
  // Messages for skipped lines, prefixed with "<source>:<line>: ".
  const std::vector<std::string>& skipped_messages() const {
    return skipped_messages_;
  }

 private:
  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_;
  CorpusKind kind_;
  ErrorPolicy policy_;
  std::string source_name_;
  std::uint64_t line_index_ = 0;
  std::size_t skipped_ = 0;
  std::vector<std::string> skipped_messages_;
  std::string line_;
};

// Convenience for tests and small inputs.
std::vector<CorpusItem> LoadCorpus(const std::string& path, CorpusKind kind,
                                   ErrorPolicy policy = ErrorPolicy::kAbort);

}  // namespace lexaug

#endif  // LEXAUG_CORPUS_H_
