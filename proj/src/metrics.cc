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

#include "lexaug/metrics.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "lexaug/corpus.h"
#include "lexaug/error.h"
#include "lexaug/unicode.h"

namespace lexaug {
namespace {

using NgramCounts = std::unordered_map<std::u32string_view, std::uint64_t>;

// Python's str.split(): runs of whitespace separate words.
std::vector<std::u32string> SplitWords(const std::u32string& text) {
  std::vector<std::u32string> words;
  std::u32string cur;
  for (char32_t c : text) {
    if (unicode::IsWhitespace(c)) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::u32string StripWhitespace(const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (!unicode::IsWhitespace(c)) out.push_back(c);
  }
  return out;
}

bool IsAsciiPunct(char32_t c) {
  return c < 0x80 && std::string_view("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~")
                             .find(static_cast<char>(c)) != std::string_view::npos;
}

// Splits a leading or trailing ASCII punctuation mark off each word, as the
// reference chrF++ word n-gram extraction does.
std::vector<std::u32string> WordsForNgrams(const std::u32string& text) {
  std::vector<std::u32string> out;
  for (std::u32string& w : SplitWords(text)) {
    if (w.size() == 1) {
      out.push_back(std::move(w));
    } else if (IsAsciiPunct(w.back())) {
      out.push_back(w.substr(0, w.size() - 1));
      out.push_back(w.substr(w.size() - 1));
    } else if (IsAsciiPunct(w.front())) {
      out.push_back(w.substr(0, 1));
      out.push_back(w.substr(1));
    } else {
      out.push_back(std::move(w));
    }
  }
  return out;
}

NgramCounts CharNgrams(const std::u32string& line, std::size_t n) {
  NgramCounts counts;
  if (line.size() < n) return counts;
  const std::u32string_view view(line);
  for (std::size_t i = 0; i + n <= line.size(); ++i) ++counts[view.substr(i, n)];
  return counts;
}

NgramCounts WordNgrams(const std::vector<std::u32string>& words, std::size_t n,
                       std::vector<std::u32string>& storage) {
  NgramCounts counts;
  if (words.size() < n) return counts;
  const std::size_t base = storage.size();
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    std::u32string joined = words[i];
    for (std::size_t j = 1; j < n; ++j) {
      joined.push_back(U' ');
      joined += words[i + j];
    }
    storage.push_back(std::move(joined));
  }
  for (std::size_t i = base; i < storage.size(); ++i) ++counts[storage[i]];
  return counts;
}

void AppendMatchStats(const NgramCounts& hyp, const NgramCounts& ref,
                      std::vector<std::uint64_t>& out) {
  std::uint64_t hyp_count = 0;
  std::uint64_t match = 0;
  for (const auto& [ng, c] : hyp) {
    hyp_count += c;
    auto it = ref.find(ng);
    if (it != ref.end()) match += std::min(c, it->second);
  }
  std::uint64_t ref_count = 0;
  for (const auto& [ng, c] : ref) ref_count += c;
  out.push_back(ref.empty() ? 0 : hyp_count);
  out.push_back(ref_count);
  out.push_back(match);
}

std::size_t CountsPerOrder(const ChrfParams& p) {
  return 3 * static_cast<std::size_t>(p.char_order + p.word_order);
}

std::vector<std::string> NormalizedTokens(std::string_view text) {
  const TokenizedSentence t = Tokenize(text);
  std::vector<std::string> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.push_back(unicode::CaseFold(t.surface(i)));
  }
  return out;
}

bool ContainsRun(const std::vector<std::string>& haystack,
                 const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

bool ContainsAny(const std::vector<std::string>& tokens,
                 const std::vector<std::vector<std::string>>& watched) {
  return std::any_of(watched.begin(), watched.end(),
                     [&](const auto& w) { return ContainsRun(tokens, w); });
}

double Percent(std::size_t count, std::size_t total) {
  return total == 0 ? 0.0
                    : 100.0 * static_cast<double>(count) /
                          static_cast<double>(total);
}

}  // namespace

std::string_view DirectionName(Direction d) {
  return d == Direction::kEnToXx ? "en_to_xx" : "xx_to_en";
}

std::optional<Direction> ParseDirection(std::string_view name) {
  std::string lower = unicode::CaseFold(name);
  std::replace(lower.begin(), lower.end(), '-', '_');
  if (lower == "en_to_xx" || lower == "en_xx") return Direction::kEnToXx;
  if (lower == "xx_to_en" || lower == "xx_en") return Direction::kXxToEn;
  return std::nullopt;
}

EvalRow ParseEvalRow(std::string_view line) {
  EvalRow row;
  try {
    const auto j = nlohmann::json::parse(line);
    row.lang = j.at("lang").get<std::string>();
    const auto dir = ParseDirection(j.at("direction").get<std::string>());
    if (!dir) throw Error(ErrorCode::kParse, "unknown direction");
    row.direction = *dir;
    row.source = j.value("source", "");
    row.hypothesis = j.at("hypothesis").get<std::string>();
    row.reference = j.at("reference").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad eval row: ") + e.what());
  }
  if (row.reference.empty()) {
    throw Error(ErrorCode::kParse, "empty reference");
  }
  return row;
}

std::vector<EvalRow> LoadEvalRows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<EvalRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      rows.push_back(ParseEvalRow(line));
    } catch (const Error& e) {
      throw Error(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what(),
                  line_no);
    }
  }
  return rows;
}

std::string ChrfParams::Signature() const {
  std::ostringstream s;
  s << "nrefs:1|case:mixed|eff:" << (effective_order ? "yes" : "no")
    << "|nc:" << char_order << "|nw:" << word_order
    << "|space:" << (whitespace ? "yes" : "no");
  return s.str();
}

ChrfStats& ChrfStats::operator+=(const ChrfStats& other) {
  if (counts.empty()) {
    counts = other.counts;
    return *this;
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

ChrfStats ChrfSentenceStats(std::string_view hyp, std::string_view ref,
                            const ChrfParams& params) {
  if (params.char_order < 1 || params.word_order < 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid n-gram orders");
  }
  const std::u32string hyp_cp = unicode::ToCodepoints(hyp);
  const std::u32string ref_cp = unicode::ToCodepoints(ref);
  const std::u32string hyp_chars = params.whitespace ? hyp_cp : StripWhitespace(hyp_cp);
  const std::u32string ref_chars = params.whitespace ? ref_cp : StripWhitespace(ref_cp);

  ChrfStats stats;
  stats.counts.reserve(CountsPerOrder(params));
  for (int n = 1; n <= params.char_order; ++n) {
    AppendMatchStats(CharNgrams(hyp_chars, n), CharNgrams(ref_chars, n),
                     stats.counts);
  }
  if (params.word_order > 0) {
    const auto hyp_words = WordsForNgrams(hyp_cp);
    const auto ref_words = WordsForNgrams(ref_cp);
    std::vector<std::u32string> hyp_store, ref_store;
    hyp_store.reserve(hyp_words.size() * params.word_order);
    ref_store.reserve(ref_words.size() * params.word_order);
    for (int n = 1; n <= params.word_order; ++n) {
      AppendMatchStats(WordNgrams(hyp_words, n, hyp_store),
                       WordNgrams(ref_words, n, ref_store), stats.counts);
    }
  }
  return stats;
}

double ChrfFromStats(const ChrfStats& stats, const ChrfParams& params) {
  const std::size_t orders = CountsPerOrder(params) / 3;
  if (stats.counts.size() != 3 * orders) {
    throw Error(ErrorCode::kInvalidArgument, "statistics size mismatch");
  }
  // Mirrors the reference implementation's arithmetic step for step.
  constexpr double kEps = 1e-16;
  const double factor = params.beta * params.beta;
  double score = 0.0;
  double avg_prec = 0.0;
  double avg_rec = 0.0;
  int effective = 0;
  for (std::size_t i = 0; i < orders; ++i) {
    const auto n_hyp = static_cast<double>(stats.counts[3 * i]);
    const auto n_ref = static_cast<double>(stats.counts[3 * i + 1]);
    const auto n_match = static_cast<double>(stats.counts[3 * i + 2]);
    const double prec = n_hyp > 0 ? n_match / n_hyp : kEps;
    const double rec = n_ref > 0 ? n_match / n_ref : kEps;
    const double denom = factor * prec + rec;
    score += denom > 0 ? (1 + factor) * prec * rec / denom : kEps;
    if (n_hyp > 0 && n_ref > 0) {
      avg_prec += prec;
      avg_rec += rec;
      ++effective;
    }
  }
  if (!params.effective_order) {
    return 100 * score / static_cast<double>(orders);
  }
  if (effective == 0) {
    avg_prec = avg_rec = 0.0;
  } else {
    avg_prec /= effective;
    avg_rec /= effective;
  }
  if (avg_prec + avg_rec != 0.0) {
    double f = (1 + factor) * avg_prec * avg_rec;
    f /= (factor * avg_prec) + avg_rec;
    return 100 * f;
  }
  return 0.0;
}

double Chrf(std::string_view hyp, std::string_view ref,
            const ChrfParams& params) {
  if (ref.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty reference");
  }
  return ChrfFromStats(ChrfSentenceStats(hyp, ref, params), params);
}

double CorpusChrf(std::span<const EvalRow> rows, const ChrfParams& params) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no rows to score");
  ChrfStats total;
  for (const EvalRow& r : rows) {
    if (r.reference.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty reference");
    }
    total += ChrfSentenceStats(r.hypothesis, r.reference, params);
  }
  return ChrfFromStats(total, params);
}

double CorpusChrf(std::span<const std::string> hyps,
                  std::span<const std::string> refs, const ChrfParams& params) {
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "hypothesis/reference counts differ: " +
                    std::to_string(hyps.size()) + " vs " +
                    std::to_string(refs.size()));
  }
  if (hyps.empty()) throw Error(ErrorCode::kEmptyInput, "no rows to score");
  ChrfStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (refs[i].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty reference at row " + std::to_string(i + 1));
    }
    total += ChrfSentenceStats(hyps[i], refs[i], params);
  }
  return ChrfFromStats(total, params);
}

HitRate TokenHitRate(
    std::span<const std::pair<std::string, std::string>> rows,
    const std::set<std::string>& tokens) {
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "watched token set is empty");
  }
  std::vector<std::vector<std::string>> watched;
  for (const std::string& t : tokens) {
    auto norm = NormalizedTokens(t);
    if (!norm.empty()) watched.push_back(std::move(norm));
  }
  HitRate out;
  for (const auto& [hyp, ref] : rows) {
    if (!ContainsAny(NormalizedTokens(ref), watched)) continue;
    ++out.relevant;
    if (ContainsAny(NormalizedTokens(hyp), watched)) ++out.hits;
  }
  if (out.relevant > 0) {
    out.rate = static_cast<double>(out.hits) / static_cast<double>(out.relevant);
  }
  return out;
}

bool DetectNull(std::string_view hypothesis) {
  const std::string_view trimmed = unicode::Trim(hypothesis);
  std::size_t pos = 0;
  while (pos < trimmed.size()) {
    const char32_t cp = unicode::DecodeNext(trimmed, pos);
    if (!unicode::IsPunctOrSymbol(cp) && !unicode::IsWhitespace(cp)) {
      return false;
    }
  }
  return true;
}

double CopySimilarity(std::string_view source, std::string_view hypothesis) {
  const std::u32string src = unicode::ToCodepoints(source);
  if (src.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty source");
  }
  std::unordered_map<char32_t, std::int64_t> remaining;
  for (char32_t c : src) ++remaining[c];
  std::size_t overlap = 0;
  std::size_t pos = 0;
  while (pos < hypothesis.size()) {
    auto it = remaining.find(unicode::DecodeNext(hypothesis, pos));
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return static_cast<double>(overlap) / static_cast<double>(src.size());
}

double RepetitionRatio(std::string_view hypothesis) {
  const TokenizedSentence t = Tokenize(hypothesis);
  if (t.empty()) return 0.0;
  std::unordered_set<std::string_view> unique;
  for (std::size_t i = 0; i < t.size(); ++i) unique.insert(t.surface(i));
  return static_cast<double>(t.size()) / static_cast<double>(unique.size());
}

bool DetectRepetition(std::string_view hypothesis) {
  return RepetitionRatio(hypothesis) > 3.0;
}

std::string_view ResourcednessName(Resourcedness r) {
  switch (r) {
    case Resourcedness::kHrl:
      return "HRL";
    case Resourcedness::kMrl:
      return "MRL";
    case Resourcedness::kLrl:
      return "LRL";
    case Resourcedness::kUrl:
      return "URL";
  }
  return "?";
}

std::optional<Resourcedness> ParseResourcedness(std::string_view name) {
  const std::string upper = [&] {
    std::string s(unicode::Trim(name));
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  for (auto r : {Resourcedness::kHrl, Resourcedness::kMrl, Resourcedness::kLrl,
                 Resourcedness::kUrl}) {
    if (ResourcednessName(r) == upper) return r;
  }
  return std::nullopt;
}

Resourcedness ClassifyResourcedness(std::uint64_t parallel_tokens) {
  if (parallel_tokens == 0) return Resourcedness::kUrl;
  if (parallel_tokens <= kLrlMaxTokens) return Resourcedness::kLrl;
  if (parallel_tokens <= kMrlMaxTokens) return Resourcedness::kMrl;
  return Resourcedness::kHrl;
}

double ErrorReport::NullPercent() const { return Percent(null_outputs, total); }
double ErrorReport::CopyPercent() const { return Percent(copies, total); }
double ErrorReport::RepetitionPercent() const {
  return Percent(repetitions, total);
}

std::string ErrorReport::ToJson() const {
  nlohmann::ordered_json j;
  j["total"] = total;
  j["null"] = {{"count", null_outputs}, {"percent", NullPercent()}};
  j["copy"] = {{"count", copies}, {"percent", CopyPercent()}};
  j["repetition"] = {{"count", repetitions}, {"percent", RepetitionPercent()}};
  return j.dump();
}

std::string ErrorReport::ToText() const {
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-12s %10s %9s\n", "error", "count", "percent");
  out += buf;
  const std::pair<const char*, std::size_t> rows[] = {
      {"null", null_outputs}, {"copy", copies}, {"repetition", repetitions}};
  for (const auto& [name, count] : rows) {
    std::snprintf(buf, sizeof buf, "%-12s %10zu %9.2f\n", name, count,
                  Percent(count, total));
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%-12s %10zu\n", "total", total);
  out += buf;
  return out;
}

ErrorReport DiagnoseCorpus(std::span<const EvalRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "no rows to diagnose");
  ErrorReport report;
  report.total = rows.size();
  for (const EvalRow& r : rows) {
    if (DetectNull(r.hypothesis)) ++report.null_outputs;
    if (!r.source.empty() && IsCopy(CopySimilarity(r.source, r.hypothesis))) {
      ++report.copies;
    }
    if (DetectRepetition(r.hypothesis)) ++report.repetitions;
  }
  return report;
}

}  // namespace lexaug
