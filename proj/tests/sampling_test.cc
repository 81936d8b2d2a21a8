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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "lexaug/error.h"
#include "lexaug/lexicon.h"
#include "lexaug/sampling.h"
#include "test_util.h"

namespace lexaug {
namespace {

std::vector<std::uint64_t> Draws(Rng rng, int n) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < n; ++i) out.push_back(rng.NextU64());
  return out;
}

TEST(RngTest, SameKeySameDraws) {
  EXPECT_EQ(Draws(DeriveRng(7, 11), 100), Draws(DeriveRng(7, 11), 100));
}

TEST(RngTest, NeighbouringIdsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t id = 0; id < 10'000; ++id) {
    const auto a = Draws(DeriveRng(7, id), 100);
    const auto b = Draws(DeriveRng(7, id + 1), 100);
    ASSERT_NE(a, b) << id;
    firsts.insert(a.front());
  }
  EXPECT_EQ(firsts.size(), 10'000u);
}

TEST(RngTest, UnitIntervalMean) {
  Rng rng(1, 2);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.NextDouble();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.002);
}

TEST(RngTest, UniformIntCoversRange) {
  Rng rng(3, 4);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70'000; ++i) ++counts[rng.UniformInt(7)];
  for (int c : counts) EXPECT_NEAR(c / 70'000.0, 1.0 / 7, 0.01);
}

TEST(SelectionTest, AdjustedProbability) {
  EXPECT_DOUBLE_EQ(AdjustedProbability(10, 2, 0.4), 1.0);
  EXPECT_DOUBLE_EQ(AdjustedProbability(10, 8, 0.4), 0.5);
  EXPECT_DOUBLE_EQ(AdjustedProbability(20, 20, 0.4), 0.4);
  EXPECT_DOUBLE_EQ(AdjustedProbability(10, 0, 0.4), 0.0);
}

TEST(SelectionTest, ClampedProbabilityAlwaysSelectsAll) {
  const std::vector<std::size_t> translatable = {3, 7};
  for (std::uint64_t id = 0; id < 1000; ++id) {
    Rng rng = DeriveRng(1, id);
    EXPECT_EQ(SelectBinomialAdjusted(translatable, 10, {}, rng), translatable);
  }
}

TEST(SelectionTest, BinomialMean) {
  const std::vector<std::size_t> translatable = {0, 1, 2, 3, 4, 5, 6, 7};
  double total = 0.0;
  const int trials = 100'000;
  for (int t = 0; t < trials; ++t) {
    Rng rng = DeriveRng(2, t);
    total += SelectBinomialAdjusted(translatable, 10, {}, rng).size();
  }
  EXPECT_NEAR(total / trials, 4.0, 0.05);
}

TEST(SelectionTest, EmptyTranslatableSet) {
  Rng rng(0, 0);
  EXPECT_TRUE(SelectBinomialAdjusted({}, 10, {}, rng).empty());
  EXPECT_TRUE(SelectUniformCount({}, rng).empty());
}

TEST(SelectionTest, UniformCountFrequencies) {
  const std::vector<std::size_t> translatable = {1, 4, 6};
  std::vector<int> counts(4, 0);
  const int trials = 100'000;
  for (int t = 0; t < trials; ++t) {
    Rng rng = DeriveRng(5, t);
    const auto chosen = SelectUniformCount(translatable, rng);
    ASSERT_TRUE(std::is_sorted(chosen.begin(), chosen.end()));
    ++counts[chosen.size()];
  }
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / trials, 0.25, 0.01);
}

TEST(SelectionTest, UniformCountSingle) {
  const std::vector<std::size_t> translatable = {2};
  int selected = 0;
  for (int t = 0; t < 10'000; ++t) {
    Rng rng = DeriveRng(6, t);
    selected += !SelectUniformCount(translatable, rng).empty();
  }
  EXPECT_NEAR(selected / 10'000.0, 0.5, 0.02);
}

TEST(SelectionTest, InvalidProbability) {
  EXPECT_THROW((SelectionParams{1.5, SelectionMode::kBinomialAdjusted}.Validate()),
               Error);
  EXPECT_NO_THROW(SelectionParams{}.Validate());
}

TEST(ChooseTranslationTest, SingleCandidate) {
  const LexEntry gato = testing::Entry("cat", "gato", "en", "es");
  const std::vector<const LexEntry*> c = {&gato};
  Rng rng(0, 0);
  EXPECT_EQ(&ChooseTranslation(c, rng), &gato);
}

TEST(ChooseTranslationTest, UniformOverFour) {
  const LexEntry e[4] = {testing::Entry("x", "a", "en", "es"),
                         testing::Entry("x", "b", "en", "es"),
                         testing::Entry("x", "c", "en", "fr"),
                         testing::Entry("x", "d", "en", "yo")};
  const std::vector<const LexEntry*> c = {&e[0], &e[1], &e[2], &e[3]};
  std::map<const LexEntry*, int> counts;
  const int trials = 100'000;
  for (int t = 0; t < trials; ++t) {
    Rng rng = DeriveRng(9, t);
    ++counts[&ChooseTranslation(c, rng)];
  }
  for (const auto& [entry, n] : counts) {
    EXPECT_NEAR(static_cast<double>(n) / trials, 0.25, 0.01) << entry->tgt_term;
  }
}

TEST(ChooseTranslationTest, ScopeFilters) {
  const LexEntry gato = testing::Entry("cat", "gato", "en", "es");
  const LexEntry chat = testing::Entry("cat", "chat", "en", "fr");
  const std::vector<const LexEntry*> c = {&gato, &chat};
  for (int t = 0; t < 100; ++t) {
    Rng rng = DeriveRng(1, t);
    EXPECT_EQ(ChooseTranslation(c, rng, "fr").tgt_term, "chat");
  }
  Rng rng(0, 0);
  try {
    ChooseTranslation(c, rng, "de");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoCandidate);
  }
}

}  // namespace
}  // namespace lexaug
