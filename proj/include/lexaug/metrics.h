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

// Translation scoring and error diagnostics.

#ifndef LEXAUG_METRICS_H_
#define LEXAUG_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexaug {

enum class Direction { kEnToXx, kXxToEn };

std::string_view DirectionName(Direction d);
std::optional<Direction> ParseDirection(std::string_view name);

struct EvalRow {
  std::string lang;
  Direction direction = Direction::kEnToXx;
  std::string source;
  std::string hypothesis;
  std::string reference;
};

// JSON lines {"lang","direction","source","hypothesis","reference"}.
// Rows with an empty reference are rejected with the offending line number.
std::vector<EvalRow> LoadEvalRows(const std::string& path);
EvalRow ParseEvalRow(std::string_view line);

// ChrF as computed by SacreBLEU 2.x. The defaults correspond to the
// signature nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no.
struct ChrfParams {
  int char_order = 6;
  int word_order = 0;
  double beta = 2.0;
  // true: average precision/recall over orders that have both hypothesis and
  // reference n-grams ("eff:yes"). false: epsilon-smoothed mean of per-order
  // F-scores.
  bool effective_order = true;
  // Keep whitespace inside character n-grams.
  bool whitespace = false;

  std::string Signature() const;
};

// Flattened [hyp, ref, match] counts per order. Statistics are additive, so
// corpus scores come from summing per-sentence statistics in any order.
struct ChrfStats {
  std::vector<std::uint64_t> counts;

  ChrfStats& operator+=(const ChrfStats& other);
};

ChrfStats ChrfSentenceStats(std::string_view hyp, std::string_view ref,
                            const ChrfParams& params = {});
double ChrfFromStats(const ChrfStats& stats, const ChrfParams& params = {});

// Score in [0, 100]. Throws kInvalidArgument when `ref` is empty.
double Chrf(std::string_view hyp, std::string_view ref,
            const ChrfParams& params = {});

// Micro-averaged corpus ChrF. Throws kEmptyInput on no rows.
double CorpusChrf(std::span<const EvalRow> rows, const ChrfParams& params = {});
double CorpusChrf(std::span<const std::string> hyps,
                  std::span<const std::string> refs,
                  const ChrfParams& params = {});

struct HitRate {
  // Absent when no reference contains a watched token.
  std::optional<double> rate;
  std::size_t relevant = 0;  // |R_D|
  std::size_t hits = 0;
};

// Rows are (hypothesis, reference). Watched tokens match case-insensitively
// on whole tokens; a multi-token entry must appear as a contiguous run.
// Throws kInvalidArgument when `tokens` is empty.
HitRate TokenHitRate(
    std::span<const std::pair<std::string, std::string>> rows,
    const std::set<std::string>& tokens);

// Empty after trimming, or only punctuation/symbols (whitespace between them
// is allowed).
bool DetectNull(std::string_view hypothesis);

// |chars(source) ∩ chars(hypothesis)| / |chars(source)| over code-point
// multisets; whitespace counts. Throws kInvalidArgument on an empty source.
double CopySimilarity(std::string_view source, std::string_view hypothesis);

inline constexpr double kCopyThreshold = 0.85;
inline bool IsCopy(double similarity) { return similarity > kCopyThreshold; }

// total tokens / unique tokens > 3.
bool DetectRepetition(std::string_view hypothesis);
double RepetitionRatio(std::string_view hypothesis);

enum class Resourcedness { kHrl, kMrl, kLrl, kUrl };

std::string_view ResourcednessName(Resourcedness r);
std::optional<Resourcedness> ParseResourcedness(std::string_view name);

inline constexpr std::uint64_t kLrlMaxTokens = 360'000'000;
inline constexpr std::uint64_t kMrlMaxTokens = 2'000'000'000;

// URL: 0, LRL: [1, 360M], MRL: (360M, 2B], HRL: > 2B.
Resourcedness ClassifyResourcedness(std::uint64_t parallel_tokens);

struct ErrorReport {
  std::size_t total = 0;
  std::size_t null_outputs = 0;
  std::size_t copies = 0;
  std::size_t repetitions = 0;

  double NullPercent() const;
  double CopyPercent() const;
  double RepetitionPercent() const;

  std::string ToJson() const;
  std::string ToText() const;
};

// A row may count toward several error types. Copy detection is skipped for
// rows with an empty source. Throws kEmptyInput on no rows.
ErrorReport DiagnoseCorpus(std::span<const EvalRow> rows);

}  // namespace lexaug

#endif  // LEXAUG_METRICS_H_
