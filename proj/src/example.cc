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

#include "lexaug/example.h"

#include "json.hpp"
#include "lexaug/error.h"

namespace lexaug {

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kTranslation:
      return "translation";
    case Task::kMass:
      return "mass";
    case Task::kCodeswitchMono:
      return "codeswitch_mono";
    case Task::kCodeswitchParallel:
      return "codeswitch_parallel";
    case Task::kGlowupMono:
      return "glowup_mono";
    case Task::kGlowupParallel:
      return "glowup_parallel";
    case Task::kTokenPair:
      return "token_pair";
  }
  return "unknown";
}

std::optional<Task> ParseTaskName(std::string_view name) {
  for (Task t : kAllTasks) {
    if (TaskName(t) == name) return t;
  }
  return std::nullopt;
}

std::string ExampleToJson(const TrainingExample& example) {
  nlohmann::ordered_json j;
  j["task"] = TaskName(example.task);
  j["source"] = example.source;
  j["target"] = example.target;
  j["tgt_lang"] = example.tgt_lang;
  j["tgt_script"] = example.tgt_script;
  j["origin_id"] = example.origin_id;
  return j.dump();
}

TrainingExample ExampleFromJson(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    TrainingExample ex;
    const auto task = ParseTaskName(j.at("task").get<std::string>());
    if (!task) {
      throw Error(ErrorCode::kParse,
                  "unknown task " + j.at("task").get<std::string>());
    }
    ex.task = *task;
    ex.source = j.at("source").get<std::string>();
    ex.target = j.at("target").get<std::string>();
    ex.tgt_lang = j.at("tgt_lang").get<std::string>();
    ex.tgt_script = j.at("tgt_script").get<std::string>();
    ex.origin_id = j.at("origin_id").get<std::uint64_t>();
    return ex;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad example: ") + e.what());
  }
}

}  // namespace lexaug
