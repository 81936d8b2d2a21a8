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

#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "lexaug/error.h"
#include "lexaug/mixture.h"

namespace lexaug {
namespace {

TrainingExample Ex(Task task, std::uint64_t id) {
  TrainingExample ex;
  ex.task = task;
  ex.source = "s";
  ex.target = "t";
  ex.origin_id = id;
  return ex;
}

TEST(ScheduleTest, Baseline) {
  const TaskWeights w = BuildSchedule({});
  EXPECT_EQ(w.weights, (std::map<Task, double>{{Task::kTranslation, 0.40},
                                               {Task::kMass, 0.60}}));
}

TEST(ScheduleTest, MonoAugmentationSplitsMass) {
  const TaskWeights w = BuildSchedule({AugmentKind::kCodeswitch});
  EXPECT_EQ(w.weights, (std::map<Task, double>{{Task::kTranslation, 0.40},
                                               {Task::kMass, 0.30},
                                               {Task::kCodeswitchMono, 0.30}}));
}

TEST(ScheduleTest, TokenPairsShrinkTheRest) {
  const TaskWeights w = BuildSchedule({AugmentKind::kCodeswitch, AugmentKind::kNone, true});
  EXPECT_EQ(w.weights, (std::map<Task, double>{{Task::kTokenPair, 0.05},
                                               {Task::kTranslation, 0.38},
                                               {Task::kMass, 0.285},
                                               {Task::kCodeswitchMono, 0.285}}));
}

TEST(ScheduleTest, ParallelAugmentationSplitsTranslation) {
  const TaskWeights w = BuildSchedule({AugmentKind::kGlowup, AugmentKind::kGlowup});
  EXPECT_EQ(w.weights, (std::map<Task, double>{{Task::kTranslation, 0.20},
                                               {Task::kGlowupParallel, 0.20},
                                               {Task::kMass, 0.30},
                                               {Task::kGlowupMono, 0.30}}));
  EXPECT_NO_THROW(w.Validate());
}

TEST(TaskWeightsTest, JsonRoundTripAndValidation) {
  const TaskWeights w = BuildSchedule({AugmentKind::kCodeswitch, AugmentKind::kNone, true});
  EXPECT_EQ(TaskWeights::FromJson(w.ToJson()), w);
  EXPECT_THROW(TaskWeights::FromJson(R"({"translation":0.5})"), Error);
  EXPECT_THROW(TaskWeights::FromJson(R"({"bogus":1.0})"), Error);
  EXPECT_THROW(TaskWeights::FromJson(R"({"translation":1.5,"mass":-0.5})"), Error);
  EXPECT_EQ(ParseAugmentKind("glowup"), AugmentKind::kGlowup);
  EXPECT_FALSE(ParseAugmentKind("other").has_value());
}

TEST(CyclingStreamTest, FirstPassKeepsOrderThenReshuffles) {
  std::vector<TrainingExample> items;
  for (int i = 0; i < 5; ++i) items.push_back(Ex(Task::kMass, i));
  CyclingStream stream(items, 3);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(stream.Next()->origin_id, static_cast<std::uint64_t>(i));
  std::multiset<std::uint64_t> second;
  for (int i = 0; i < 5; ++i) second.insert(stream.Next()->origin_id);
  EXPECT_EQ(second, (std::multiset<std::uint64_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(stream.epoch(), 1u);
  EXPECT_THROW(CyclingStream({}, 0), Error);
}

TEST(InterleaverTest, SingleTaskPassthrough) {
  std::map<Task, std::unique_ptr<ExampleStream>> streams;
  std::vector<TrainingExample> items = {Ex(Task::kTranslation, 0), Ex(Task::kTranslation, 1)};
  streams[Task::kTranslation] = std::make_unique<CyclingStream>(items, 0);
  TaskWeights w;
  w.weights = {{Task::kTranslation, 1.0}};
  Interleaver mix(std::move(streams), w, 5);
  EXPECT_EQ(mix.Next().origin_id, 0u);
  EXPECT_EQ(mix.Next().origin_id, 1u);
}

TEST(InterleaverTest, MissingStreamIsAConfigError) {
  std::map<Task, std::unique_ptr<ExampleStream>> streams;
  streams[Task::kTranslation] =
      std::make_unique<CyclingStream>(std::vector{Ex(Task::kTranslation, 0)}, 0);
  try {
    Interleaver mix(std::move(streams), BuildSchedule({}), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(TaskSamplerTest, EmpiricalShares) {
  TaskSampler sampler(BuildSchedule({}), 11);
  std::map<Task, int> counts;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) ++counts[sampler.Next()];
  EXPECT_NEAR(counts[Task::kTranslation] / static_cast<double>(n), 0.4, 0.005);
  EXPECT_NEAR(counts[Task::kMass] / static_cast<double>(n), 0.6, 0.005);
}

TEST(TaskSamplerTest, SameSeedSameSequence) {
  const TaskWeights w = BuildSchedule({AugmentKind::kCodeswitch, AugmentKind::kNone, true});
  TaskSampler a(w, 4), b(w, 4);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.Next(), b.Next());
}

TEST(TaskSamplerTest, ZeroWeightsNeverDrawn) {
  TaskWeights w;
  w.weights = {{Task::kTranslation, 0.0}, {Task::kMass, 1.0}};
  TaskSampler sampler(w, 1);
  for (int i = 0; i < 10'000; ++i) ASSERT_EQ(sampler.Next(), Task::kMass);
}

}  // namespace
}  // namespace lexaug
