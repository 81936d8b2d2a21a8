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

// Lexical data augmentation.
//
// Codeswitching replaces sampled source words with dictionary translations
// (possibly into many languages). GLOWUP prepends "<hint> word <is>
// translation" prompts instead. Both operate on translatable units: the
// leftmost-longest runs of tokens whose normalized form is a lexicon key.
//
// Every rendered source starts with "<task> <2lang> <2script> ".

#ifndef LEXAUG_AUGMENT_H_
#define LEXAUG_AUGMENT_H_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexaug/corpus.h"
#include "lexaug/example.h"
#include "lexaug/lexicon.h"
#include "lexaug/sampling.h"

namespace lexaug {

struct SentinelInventory {
  std::map<Task, std::string> task_tokens = {
      {Task::kTranslation, "<2translation>"},
      {Task::kMass, "<2mass>"},
      {Task::kCodeswitchMono, "<2codeswitch>"},
      {Task::kCodeswitchParallel, "<2codeswitch_parallel>"},
      {Task::kGlowupMono, "<2glowup_mono>"},
      {Task::kGlowupParallel, "<2glowup>"},
  };
  // "{lang}" / "{script}" is replaced by the code.
  std::string lang_template = "<2{lang}>";
  std::string script_template = "<2{script}>";
  std::string mask = "<mask>";
  std::string hint = "<hint>";
  std::string is = "<is>";
  std::string end_hints = "<endhints>";

  // Token-pair examples reuse the translation token.
  const std::string& TaskToken(Task task) const;
  std::string LangTag(std::string_view lang) const;
  std::string ScriptTag(std::string_view script) const;

  // Applies an override such as "mask=<M>" or "glowup_parallel=<2g>".
  // Keys: task wire names, lang_template, script_template, mask, hint, is,
  // end_hints. Throws kConfig on an unknown key.
  void Override(std::string_view key, std::string value);

  // Throws kConfig if any sentinel is empty or two sentinels coincide.
  void Validate() const;

  // Task tokens, mask and hint delimiters.
  std::vector<std::string> FixedSentinels() const;

  // First fixed sentinel occurring in `text`, if any.
  std::optional<std::string> FindIn(std::string_view text) const;

  // "<task> <2lang> <2script> "
  std::string Prefix(Task task, std::string_view lang,
                     std::string_view script) const;
};

// Throws kInvalidArgument if `text` contains a sentinel.
void CheckNoSentinels(std::string_view text, const SentinelInventory& s);

// Checks the sentinel prefix and a non-empty target.
void ValidateExample(const TrainingExample& ex, const SentinelInventory& s);

struct TranslatableUnit {
  std::size_t first = 0;  // token range [first, last)
  std::size_t last = 0;
  std::vector<const LexEntry*> candidates;
};

// Leftmost-longest scan for lexicon matches. With `tgt_filter`, a unit only
// counts when it has a candidate in that target language, and candidates are
// restricted to it.
std::vector<TranslatableUnit> FindTranslatableUnits(
    const TokenizedSentence& x, std::string_view src_lang, const Lexicon& lex,
    std::optional<std::string_view> tgt_filter = std::nullopt);

struct CodeswitchResult {
  std::string text;
  // Token indices covered by replaced units, ascending.
  std::vector<std::size_t> swapped;
};

CodeswitchResult Codeswitch(const TokenizedSentence& x,
                            std::string_view src_lang, const Lexicon& lex,
                            const SelectionParams& params, Rng& rng);

TrainingExample CodeswitchMono(const Record& rec, const Lexicon& lex,
                               const SelectionParams& params, Rng& rng,
                               const SentinelInventory& s = {});

TrainingExample CodeswitchParallel(const SentencePair& pair,
                                   const Lexicon& lex,
                                   const SelectionParams& params, Rng& rng,
                                   const SentinelInventory& s = {});

struct MaskResult {
  std::string masked;
  std::string target;
};

// Replaces one contiguous span of ceil(mask_fraction * n) tokens with
// `mask_token`, span start uniform. Throws kEmptyInput when n == 0.
MaskResult MassMask(const TokenizedSentence& x, Rng& rng,
                    double mask_fraction = 0.5,
                    std::string_view mask_token = "<mask>");

struct GlowupPrompt {
  std::string prompt;  // empty when nothing was hinted
  // Token indices covered by hinted units, ascending.
  std::vector<std::size_t> hinted;
};

// Picks hinted units with SelectUniformCount. `tgt_scope` restricts both the
// translatable units and the translations to one target language.
GlowupPrompt MakeGlowupPrompt(const TokenizedSentence& x,
                              std::string_view src_lang, const Lexicon& lex,
                              Rng& rng,
                              std::optional<std::string_view> tgt_scope,
                              const SentinelInventory& s = {});

TrainingExample GlowupMono(const Record& rec, const Lexicon& lex, Rng& rng,
                           const SentinelInventory& s = {},
                           double mask_fraction = 0.5);

TrainingExample GlowupParallel(const SentencePair& pair, const Lexicon& lex,
                               Rng& rng, const SentinelInventory& s = {});

// Decode-time source with hints. Same formatting as GlowupParallel, no
// reference needed.
std::string RenderGlowupSource(const Record& src, std::string_view tgt_lang,
                               std::string_view tgt_script, const Lexicon& lex,
                               Rng& rng, const SentinelInventory& s = {});

// Vanilla-branch examples.
TrainingExample MassExample(const Record& rec, Rng& rng,
                            const SentinelInventory& s = {},
                            double mask_fraction = 0.5);
TrainingExample TranslationExample(const SentencePair& pair,
                                   const SentinelInventory& s = {});

TrainingExample TokenPairExample(const LexEntry& entry, std::uint64_t origin_id,
                                 const SentinelInventory& s = {});

// One example per entry in lexicon order; origin_id is the entry index. With
// `lang_filter`, only entries whose src_lang or tgt_lang is listed.
void TokenPairExamples(const Lexicon& lex,
                       const std::optional<std::set<std::string>>& lang_filter,
                       const std::function<void(const TrainingExample&)>& sink,
                       const SentinelInventory& s = {});

}  // namespace lexaug

#endif  // LEXAUG_AUGMENT_H_
