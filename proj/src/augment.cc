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

#include "lexaug/augment.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lexaug/error.h"
#include "lexaug/unicode.h"

namespace lexaug {
namespace {

std::string Substitute(std::string_view tmpl, std::string_view placeholder,
                       std::string_view value) {
  std::string out(tmpl);
  const std::size_t pos = out.find(placeholder);
  if (pos != std::string::npos) out.replace(pos, placeholder.size(), value);
  return out;
}

void AppendCovered(const TranslatableUnit& unit,
                   std::vector<std::size_t>& out) {
  for (std::size_t t = unit.first; t < unit.last; ++t) out.push_back(t);
}

std::vector<std::size_t> UnitIndices(std::size_t count) {
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  return idx;
}

}  // namespace

const std::string& SentinelInventory::TaskToken(Task task) const {
  const Task key = task == Task::kTokenPair ? Task::kTranslation : task;
  auto it = task_tokens.find(key);
  if (it == task_tokens.end()) {
    throw Error(ErrorCode::kConfig,
                "no task token for " + std::string(TaskName(task)));
  }
  return it->second;
}

std::string SentinelInventory::LangTag(std::string_view lang) const {
  return Substitute(lang_template, "{lang}", lang);
}

std::string SentinelInventory::ScriptTag(std::string_view script) const {
  return Substitute(script_template, "{script}", script);
}

void SentinelInventory::Override(std::string_view key, std::string value) {
  if (auto task = ParseTaskName(key); task && *task != Task::kTokenPair) {
    task_tokens[*task] = std::move(value);
  } else if (key == "lang_template") {
    lang_template = std::move(value);
  } else if (key == "script_template") {
    script_template = std::move(value);
  } else if (key == "mask") {
    mask = std::move(value);
  } else if (key == "hint") {
    hint = std::move(value);
  } else if (key == "is") {
    is = std::move(value);
  } else if (key == "end_hints") {
    end_hints = std::move(value);
  } else {
    throw Error(ErrorCode::kConfig,
                "unknown sentinel key \"" + std::string(key) + "\"");
  }
}

std::vector<std::string> SentinelInventory::FixedSentinels() const {
  std::vector<std::string> out;
  for (const auto& [task, token] : task_tokens) out.push_back(token);
  out.push_back(mask);
  out.push_back(hint);
  out.push_back(is);
  out.push_back(end_hints);
  return out;
}

void SentinelInventory::Validate() const {
  for (Task t : kAllTasks) TaskToken(t);
  if (lang_template.find("{lang}") == std::string::npos) {
    throw Error(ErrorCode::kConfig, "lang_template lacks {lang}");
  }
  if (script_template.find("{script}") == std::string::npos) {
    throw Error(ErrorCode::kConfig, "script_template lacks {script}");
  }
  std::vector<std::string> all = FixedSentinels();
  for (const std::string& s : all) {
    if (s.empty()) throw Error(ErrorCode::kConfig, "empty sentinel");
  }
  std::sort(all.begin(), all.end());
  auto dup = std::adjacent_find(all.begin(), all.end());
  if (dup != all.end()) {
    throw Error(ErrorCode::kConfig, "duplicate sentinel " + *dup);
  }
}

std::optional<std::string> SentinelInventory::FindIn(
    std::string_view text) const {
  for (const auto& [task, token] : task_tokens) {
    if (text.find(token) != std::string_view::npos) return token;
  }
  for (const std::string* s : {&mask, &hint, &is, &end_hints}) {
    if (text.find(*s) != std::string_view::npos) return *s;
  }
  return std::nullopt;
}

std::string SentinelInventory::Prefix(Task task, std::string_view lang,
                                      std::string_view script) const {
  std::string out = TaskToken(task);
  out.push_back(' ');
  out += LangTag(lang);
  out.push_back(' ');
  out += ScriptTag(script);
  out.push_back(' ');
  return out;
}

void CheckNoSentinels(std::string_view text, const SentinelInventory& s) {
  if (auto found = s.FindIn(text)) {
    throw Error(ErrorCode::kInvalidArgument,
                "text contains reserved sentinel " + *found);
  }
}

void ValidateExample(const TrainingExample& ex, const SentinelInventory& s) {
  const std::string prefix = s.Prefix(ex.task, ex.tgt_lang, ex.tgt_script);
  if (ex.source.compare(0, prefix.size(), prefix) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "source lacks sentinel prefix \"" + prefix + "\"");
  }
  const std::string_view body = std::string_view(ex.source).substr(prefix.size());
  for (const auto& [task, token] : s.task_tokens) {
    if (body.substr(0, token.size()) == token) {
      throw Error(ErrorCode::kInvalidArgument, "more than one task token");
    }
  }
  if (ex.target.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty target");
  }
}

std::vector<TranslatableUnit> FindTranslatableUnits(
    const TokenizedSentence& x, std::string_view src_lang, const Lexicon& lex,
    std::optional<std::string_view> tgt_filter) {
  std::vector<TranslatableUnit> units;
  const std::size_t n = x.size();
  const std::size_t max_len = lex.MaxPhraseTokens(src_lang);
  if (n == 0 || max_len == 0) return units;

  std::vector<std::string> folded(n);
  for (std::size_t i = 0; i < n; ++i) folded[i] = unicode::CaseFold(x.surface(i));

  std::string key;
  std::vector<std::size_t> key_ends;
  std::size_t i = 0;
  while (i < n) {
    const std::size_t longest = std::min(max_len, n - i);
    key.clear();
    key_ends.clear();
    for (std::size_t l = 0; l < longest; ++l) {
      if (l > 0) key.push_back(' ');
      key += folded[i + l];
      key_ends.push_back(key.size());
    }
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      const auto ids =
          lex.FindNormalized(src_lang, std::string_view(key).substr(0, key_ends[len - 1]));
      if (ids.empty()) continue;
      TranslatableUnit unit{i, i + len, {}};
      for (EntryId id : ids) {
        const LexEntry& e = lex.entry(id);
        if (!tgt_filter || e.tgt_lang == *tgt_filter) unit.candidates.push_back(&e);
      }
      if (unit.candidates.empty()) continue;
      units.push_back(std::move(unit));
      i += len;
      matched = true;
      break;
    }
    if (!matched) ++i;
  }
  return units;
}

CodeswitchResult Codeswitch(const TokenizedSentence& x,
                            std::string_view src_lang, const Lexicon& lex,
                            const SelectionParams& params, Rng& rng) {
  params.Validate();
  const auto units = FindTranslatableUnits(x, src_lang, lex);
  const auto chosen = SelectTokens(UnitIndices(units.size()), x.size(), params, rng);

  CodeswitchResult result;
  const std::string_view text(x.text());
  std::size_t cursor = 0;
  for (std::size_t u : chosen) {
    const TranslatableUnit& unit = units[u];
    const LexEntry& e = ChooseTranslation(unit.candidates, rng);
    const std::size_t begin = x.spans()[unit.first].begin;
    const std::size_t end = x.spans()[unit.last - 1].end;
    result.text.append(text.substr(cursor, begin - cursor));
    result.text.append(e.tgt_term);
    cursor = end;
    AppendCovered(unit, result.swapped);
  }
  result.text.append(text.substr(cursor));
  return result;
}

TrainingExample CodeswitchMono(const Record& rec, const Lexicon& lex,
                               const SelectionParams& params, Rng& rng,
                               const SentinelInventory& s) {
  const auto cs = Codeswitch(Tokenize(rec.text), rec.lang, lex, params, rng);
  TrainingExample ex;
  ex.task = Task::kCodeswitchMono;
  ex.source = s.Prefix(ex.task, rec.lang, rec.script) + cs.text;
  ex.target = rec.text;
  ex.tgt_lang = rec.lang;
  ex.tgt_script = rec.script;
  ex.origin_id = rec.id;
  return ex;
}

TrainingExample CodeswitchParallel(const SentencePair& pair,
                                   const Lexicon& lex,
                                   const SelectionParams& params, Rng& rng,
                                   const SentinelInventory& s) {
  const auto cs =
      Codeswitch(Tokenize(pair.src.text), pair.src.lang, lex, params, rng);
  TrainingExample ex;
  ex.task = Task::kCodeswitchParallel;
  ex.source = s.Prefix(ex.task, pair.tgt.lang, pair.tgt.script) + cs.text;
  ex.target = pair.tgt.text;
  ex.tgt_lang = pair.tgt.lang;
  ex.tgt_script = pair.tgt.script;
  ex.origin_id = pair.id;
  return ex;
}

MaskResult MassMask(const TokenizedSentence& x, Rng& rng, double mask_fraction,
                    std::string_view mask_token) {
  if (!(mask_fraction >= 0.0 && mask_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask fraction must lie in [0, 1]");
  }
  const std::size_t n = x.size();
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "cannot mask an empty sentence");
  // The epsilon keeps e.g. 0.3 * 10 from rounding up to 4.
  auto span_len = static_cast<std::size_t>(
      std::ceil(mask_fraction * static_cast<double>(n) - 1e-9));
  span_len = std::min(span_len, n);
  const std::size_t start = rng.UniformInt(n - span_len + 1);

  MaskResult out;
  out.target = x.text();
  const std::string_view text(x.text());
  std::size_t cursor = 0;
  for (std::size_t t = start; t < start + span_len; ++t) {
    const TokenSpan& sp = x.spans()[t];
    out.masked.append(text.substr(cursor, sp.begin - cursor));
    out.masked.append(mask_token);
    cursor = sp.end;
  }
  out.masked.append(text.substr(cursor));
  return out;
}

GlowupPrompt MakeGlowupPrompt(const TokenizedSentence& x,
                              std::string_view src_lang, const Lexicon& lex,
                              Rng& rng,
                              std::optional<std::string_view> tgt_scope,
                              const SentinelInventory& s) {
  const auto units = FindTranslatableUnits(x, src_lang, lex, tgt_scope);
  const auto chosen = SelectUniformCount(UnitIndices(units.size()), rng);

  GlowupPrompt out;
  for (std::size_t u : chosen) {
    const TranslatableUnit& unit = units[u];
    const LexEntry& e = ChooseTranslation(unit.candidates, rng, tgt_scope);
    out.prompt += s.hint;
    out.prompt.push_back(' ');
    out.prompt += x.surface(unit.first, unit.last);
    out.prompt.push_back(' ');
    out.prompt += s.is;
    out.prompt.push_back(' ');
    out.prompt += e.tgt_term;
    out.prompt.push_back(' ');
    AppendCovered(unit, out.hinted);
  }
  if (!out.prompt.empty()) out.prompt += s.end_hints;
  return out;
}

TrainingExample GlowupMono(const Record& rec, const Lexicon& lex, Rng& rng,
                           const SentinelInventory& s, double mask_fraction) {
  const TokenizedSentence x = Tokenize(rec.text);
  const GlowupPrompt gp =
      MakeGlowupPrompt(x, rec.lang, lex, rng, std::nullopt, s);
  const std::string prompted =
      gp.prompt.empty() ? rec.text : gp.prompt + " " + rec.text;
  const std::vector<std::string> specials = {s.hint, s.is, s.end_hints};
  const TokenizedSentence xp = TokenizeWithSpecials(prompted, specials);
  const MaskResult m = MassMask(xp, rng, mask_fraction, s.mask);

  TrainingExample ex;
  ex.task = Task::kGlowupMono;
  ex.source = s.Prefix(ex.task, rec.lang, rec.script) + m.masked;
  ex.target = prompted;
  ex.tgt_lang = rec.lang;
  ex.tgt_script = rec.script;
  ex.origin_id = rec.id;
  return ex;
}

std::string RenderGlowupSource(const Record& src, std::string_view tgt_lang,
                               std::string_view tgt_script, const Lexicon& lex,
                               Rng& rng, const SentinelInventory& s) {
  const TokenizedSentence x = Tokenize(src.text);
  const GlowupPrompt gp = MakeGlowupPrompt(x, src.lang, lex, rng, tgt_lang, s);
  std::string out = s.Prefix(Task::kGlowupParallel, tgt_lang, tgt_script);
  if (!gp.prompt.empty()) {
    out += gp.prompt;
    out.push_back(' ');
  }
  out += src.text;
  return out;
}

TrainingExample GlowupParallel(const SentencePair& pair, const Lexicon& lex,
                               Rng& rng, const SentinelInventory& s) {
  TrainingExample ex;
  ex.task = Task::kGlowupParallel;
  ex.source = RenderGlowupSource(pair.src, pair.tgt.lang, pair.tgt.script, lex,
                                 rng, s);
  ex.target = pair.tgt.text;
  ex.tgt_lang = pair.tgt.lang;
  ex.tgt_script = pair.tgt.script;
  ex.origin_id = pair.id;
  return ex;
}

TrainingExample MassExample(const Record& rec, Rng& rng,
                            const SentinelInventory& s, double mask_fraction) {
  const MaskResult m = MassMask(Tokenize(rec.text), rng, mask_fraction, s.mask);
  TrainingExample ex;
  ex.task = Task::kMass;
  ex.source = s.Prefix(ex.task, rec.lang, rec.script) + m.masked;
  ex.target = m.target;
  ex.tgt_lang = rec.lang;
  ex.tgt_script = rec.script;
  ex.origin_id = rec.id;
  return ex;
}

TrainingExample TranslationExample(const SentencePair& pair,
                                   const SentinelInventory& s) {
  TrainingExample ex;
  ex.task = Task::kTranslation;
  ex.source = s.Prefix(ex.task, pair.tgt.lang, pair.tgt.script) + pair.src.text;
  ex.target = pair.tgt.text;
  ex.tgt_lang = pair.tgt.lang;
  ex.tgt_script = pair.tgt.script;
  ex.origin_id = pair.id;
  return ex;
}

TrainingExample TokenPairExample(const LexEntry& entry, std::uint64_t origin_id,
                                 const SentinelInventory& s) {
  TrainingExample ex;
  ex.task = Task::kTokenPair;
  ex.source = s.Prefix(ex.task, entry.tgt_lang, entry.tgt_script) + entry.src_term;
  ex.target = entry.tgt_term;
  ex.tgt_lang = entry.tgt_lang;
  ex.tgt_script = entry.tgt_script;
  ex.origin_id = origin_id;
  return ex;
}

void TokenPairExamples(const Lexicon& lex,
                       const std::optional<std::set<std::string>>& lang_filter,
                       const std::function<void(const TrainingExample&)>& sink,
                       const SentinelInventory& s) {
  const auto& entries = lex.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const LexEntry& e = entries[i];
    if (lang_filter && !lang_filter->count(e.src_lang) &&
        !lang_filter->count(e.tgt_lang)) {
      continue;
    }
    sink(TokenPairExample(e, i, s));
  }
}

}  // namespace lexaug
