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

#include "lexaug/mixture.h"

#include <cmath>
#include <numeric>
#include <utility>

#include "json.hpp"
#include "lexaug/error.h"

namespace lexaug {
namespace {

constexpr std::uint64_t kSamplerStream = 0x6d69787475726531ULL;

struct Rational {
  std::int64_t num;
  std::int64_t den;

  Rational operator*(const Rational& o) const {
    return Reduced(num * o.num, den * o.den);
  }
  Rational operator/(std::int64_t k) const { return Reduced(num, den * k); }
  double ToDouble() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static Rational Reduced(std::int64_t n, std::int64_t d) {
    const std::int64_t g = std::gcd(n, d);
    return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
  }
};

}  // namespace

double TaskWeights::Get(Task task) const {
  auto it = weights.find(task);
  return it == weights.end() ? 0.0 : it->second;
}

void TaskWeights::Validate() const {
  double sum = 0.0;
  for (const auto& [task, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kConfig,
                  "negative weight for " + std::string(TaskName(task)));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kConfig,
                "task weights sum to " + std::to_string(sum) + ", not 1");
  }
}

std::string TaskWeights::ToJson() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (Task t : kAllTasks) {
    auto it = weights.find(t);
    if (it != weights.end()) j[std::string(TaskName(t))] = it->second;
  }
  return j.dump();
}

TaskWeights TaskWeights::FromJson(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("bad weights JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "weights must be an object");
  TaskWeights tw;
  for (const auto& [key, value] : j.items()) {
    const auto task = ParseTaskName(key);
    if (!task) throw Error(ErrorCode::kConfig, "unknown task \"" + key + "\"");
    if (!value.is_number()) {
      throw Error(ErrorCode::kConfig, "weight for " + key + " is not a number");
    }
    tw.weights[*task] = value.get<double>();
  }
  tw.Validate();
  return tw;
}

std::optional<AugmentKind> ParseAugmentKind(std::string_view name) {
  if (name == "none") return AugmentKind::kNone;
  if (name == "codeswitch") return AugmentKind::kCodeswitch;
  if (name == "glowup") return AugmentKind::kGlowup;
  return std::nullopt;
}

TaskWeights BuildSchedule(const ScheduleConfig& cfg) {
  std::map<Task, Rational> w;
  w[Task::kTranslation] = {2, 5};
  w[Task::kMass] = {3, 5};
  if (cfg.mono_aug != AugmentKind::kNone) {
    const Task aug = cfg.mono_aug == AugmentKind::kCodeswitch
                         ? Task::kCodeswitchMono
                         : Task::kGlowupMono;
    w[aug] = w[Task::kMass] / 2;
    w[Task::kMass] = w[Task::kMass] / 2;
  }
  if (cfg.parallel_aug != AugmentKind::kNone) {
    const Task aug = cfg.parallel_aug == AugmentKind::kCodeswitch
                         ? Task::kCodeswitchParallel
                         : Task::kGlowupParallel;
    w[aug] = w[Task::kTranslation] / 2;
    w[Task::kTranslation] = w[Task::kTranslation] / 2;
  }
  if (cfg.token_pairs) {
    for (auto& [task, r] : w) r = r * Rational{19, 20};
    w[Task::kTokenPair] = {1, 20};
  }
  TaskWeights out;
  for (const auto& [task, r] : w) out.weights[task] = r.ToDouble();
  return out;
}

CyclingStream::CyclingStream(std::vector<TrainingExample> items,
                             std::uint64_t seed)
    : items_(std::move(items)), order_(items_.size()), seed_(seed) {
  if (items_.empty()) {
    throw Error(ErrorCode::kConfig, "cannot cycle an empty stream");
  }
  std::iota(order_.begin(), order_.end(), std::size_t{0});
}

void CyclingStream::Reshuffle() {
  Rng rng = DeriveRng(seed_, epoch_);
  for (std::size_t i = order_.size(); i > 1; --i) {
    std::swap(order_[i - 1], order_[rng.UniformInt(i)]);
  }
}

std::optional<TrainingExample> CyclingStream::Next() {
  if (pos_ == order_.size()) {
    ++epoch_;
    pos_ = 0;
    Reshuffle();
  }
  return items_[order_[pos_++]];
}

TaskSampler::TaskSampler(const TaskWeights& weights, std::uint64_t seed)
    : rng_(seed, kSamplerStream) {
  weights.Validate();
  double acc = 0.0;
  for (const auto& [task, w] : weights.weights) {
    if (w <= 0.0) continue;
    acc += w;
    tasks_.push_back(task);
    cumulative_.push_back(acc);
  }
  if (tasks_.empty()) throw Error(ErrorCode::kConfig, "all task weights are 0");
}

Task TaskSampler::Next() {
  const double u = rng_.NextDouble() * cumulative_.back();
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (u < cumulative_[i]) return tasks_[i];
  }
  return tasks_.back();
}

Interleaver::Interleaver(std::map<Task, std::unique_ptr<ExampleStream>> streams,
                         const TaskWeights& weights, std::uint64_t seed)
    : streams_(std::move(streams)), sampler_(weights, seed) {
  for (const auto& [task, w] : weights.weights) {
    if (w > 0.0 && !streams_.count(task)) {
      throw Error(ErrorCode::kConfig,
                  "no stream for weighted task " + std::string(TaskName(task)));
    }
  }
}

TrainingExample Interleaver::Next() {
  const Task task = sampler_.Next();
  auto ex = streams_.at(task)->Next();
  if (!ex) {
    throw Error(ErrorCode::kEmptyInput,
                "stream for " + std::string(TaskName(task)) + " is exhausted");
  }
  return std::move(*ex);
}

}  // namespace lexaug
