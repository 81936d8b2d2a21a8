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

// Training-task weights and the seeded multi-stream interleaver.

#ifndef LEXAUG_MIXTURE_H_
#define LEXAUG_MIXTURE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexaug/example.h"
#include "lexaug/sampling.h"

namespace lexaug {

struct TaskWeights {
  std::map<Task, double> weights;

  // Weight of `task`, 0 if absent.
  double Get(Task task) const;
  // Non-negative weights summing to 1 within 1e-9; throws kConfig otherwise.
  void Validate() const;

  // {"translation": 0.4, ...} in task order.
  std::string ToJson() const;
  static TaskWeights FromJson(std::string_view json);

  bool operator==(const TaskWeights&) const = default;
};

enum class AugmentKind { kNone, kCodeswitch, kGlowup };

std::optional<AugmentKind> ParseAugmentKind(std::string_view name);

struct ScheduleConfig {
  AugmentKind mono_aug = AugmentKind::kNone;
  AugmentKind parallel_aug = AugmentKind::kNone;
  bool token_pairs = false;
};

// Starts from translation 0.40 / MASS 0.60. A monolingual augmentation splits
// MASS 0.30/0.30, a parallel one splits translation 0.20/0.20, and token
// pairs take 0.05 while every other weight is scaled by 0.95. Computed in
// exact rational arithmetic.
TaskWeights BuildSchedule(const ScheduleConfig& cfg);

class ExampleStream {
 public:
  virtual ~ExampleStream() = default;
  // nullopt when exhausted.
  virtual std::optional<TrainingExample> Next() = 0;
};

// Replays a finite list forever. The first pass keeps the given order; each
// later pass is reshuffled with a seed derived from (seed, epoch).
class CyclingStream : public ExampleStream {
 public:
  CyclingStream(std::vector<TrainingExample> items, std::uint64_t seed);

  std::optional<TrainingExample> Next() override;

  std::uint64_t epoch() const { return epoch_; }

 private:
  void Reshuffle();

  std::vector<TrainingExample> items_;
  std::vector<std::size_t> order_;
  std::uint64_t seed_;
  std::uint64_t epoch_ = 0;
  std::size_t pos_ = 0;
};

// i.i.d. task draws from the weights. Tasks of weight 0 are never drawn.
class TaskSampler {
 public:
  TaskSampler(const TaskWeights& weights, std::uint64_t seed);

  Task Next();

 private:
  std::vector<Task> tasks_;
  std::vector<double> cumulative_;
  Rng rng_;
};

class Interleaver {
 public:
  // Throws kConfig if a task with positive weight has no stream.
  Interleaver(std::map<Task, std::unique_ptr<ExampleStream>> streams,
              const TaskWeights& weights, std::uint64_t seed);

  // Throws kEmptyInput if the chosen stream is exhausted.
  TrainingExample Next();

 private:
  std::map<Task, std::unique_ptr<ExampleStream>> streams_;
  TaskSampler sampler_;
};

}  // namespace lexaug

#endif  // LEXAUG_MIXTURE_H_
