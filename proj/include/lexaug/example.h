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

#ifndef LEXAUG_EXAMPLE_H_
#define LEXAUG_EXAMPLE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lexaug {

enum class Task {
  kTranslation,
  kMass,
  kCodeswitchMono,
  kCodeswitchParallel,
  kGlowupMono,
  kGlowupParallel,
  kTokenPair,
};

inline constexpr std::array<Task, 7> kAllTasks = {
    Task::kTranslation,     Task::kMass,         Task::kCodeswitchMono,
    Task::kCodeswitchParallel, Task::kGlowupMono, Task::kGlowupParallel,
    Task::kTokenPair,
};

// Wire names: "translation", "mass", "codeswitch_mono", ...
std::string_view TaskName(Task task);
std::optional<Task> ParseTaskName(std::string_view name);

// A task-tagged (source, target) pair ready for a seq2seq trainer.
struct TrainingExample {
  Task task = Task::kTranslation;
  std::string source;
  std::string target;
  std::string tgt_lang;
  std::string tgt_script;
  std::uint64_t origin_id = 0;

  bool operator==(const TrainingExample&) const = default;
};

// One JSON object, keys in the order
// task, source, target, tgt_lang, tgt_script, origin_id. No trailing newline.
std::string ExampleToJson(const TrainingExample& example);

// Throws Error(kParse) on malformed input.
TrainingExample ExampleFromJson(std::string_view line);

}  // namespace lexaug

#endif  // LEXAUG_EXAMPLE_H_
