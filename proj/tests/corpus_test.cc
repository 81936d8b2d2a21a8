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

#include <sstream>
#include <string>
#include <variant>

#include "lexaug/corpus.h"
#include "lexaug/error.h"
#include "test_util.h"

namespace lexaug {
namespace {

constexpr const char* kMono =
    R"({"lang":"en","script":"Latn","text":"The kitten lies"})" "\n"
    R"({"lang":"en","script":"Latn","text":"A Puma eats hot chip"})" "\n"
    R"({"lang":"fr","script":"Latn","text":"Le chat"})" "\n";

TEST(CorpusReaderTest, AssignsLineNumberIds) {
  std::istringstream in(kMono);
  CorpusReader reader(in, CorpusKind::kMono);
  std::vector<std::uint64_t> ids;
  while (auto item = reader.Next()) ids.push_back(std::get<Record>(*item).id);
  EXPECT_EQ(ids, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(reader.skipped(), 0u);
}

TEST(CorpusReaderTest, ExplicitIdsWin) {
  std::istringstream in(
      R"({"id":42,"lang":"en","script":"Latn","text":"x"})" "\n");
  CorpusReader reader(in, CorpusKind::kMono);
  EXPECT_EQ(std::get<Record>(*reader.Next()).id, 42u);
  EXPECT_FALSE(reader.Next().has_value());
}

TEST(CorpusReaderTest, EmptyTextNamesTheLine) {
  std::istringstream in(
      R"({"lang":"en","script":"Latn","text":"ok"})" "\n"
      R"({"lang":"en","script":"Latn","text":""})" "\n");
  CorpusReader reader(in, CorpusKind::kMono, ErrorPolicy::kAbort, "mono.jsonl");
  ASSERT_TRUE(reader.Next().has_value());
  try {
    reader.Next();
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("mono.jsonl:2"), std::string::npos);
  }
}

TEST(CorpusReaderTest, SkipPolicyCountsBadLines) {
  std::istringstream in(
      R"({"lang":"en","script":"Latn","text":"ok"})" "\n"
      "not json\n"
      "\n"
      R"({"lang":"en","script":"Latn"})" "\n"
      R"({"lang":"en","script":"Latn","text":"fine"})" "\n");
  CorpusReader reader(in, CorpusKind::kMono, ErrorPolicy::kSkip);
  std::vector<std::string> texts;
  while (auto item = reader.Next()) texts.push_back(std::get<Record>(*item).text);
  EXPECT_EQ(texts, (std::vector<std::string>{"ok", "fine"}));
  EXPECT_EQ(reader.skipped(), 2u);
  EXPECT_EQ(reader.skipped_messages().size(), 2u);
}

TEST(CorpusReaderTest, ParallelSameLanguageIsRejected) {
  const std::string line =
      R"({"src":{"lang":"en","script":"Latn","text":"a"},)"
      R"("tgt":{"lang":"en","script":"Latn","text":"b"}})";
  EXPECT_THROW(ParseCorpusLine(line, CorpusKind::kParallel, 0), Error);
}

TEST(CorpusReaderTest, ParsesParallelPairs) {
  const std::string line =
      R"({"id":9,"src":{"lang":"en","script":"Latn","text":"the cat"},)"
      R"("tgt":{"lang":"es","script":"Latn","text":"el gato"}})";
  const auto pair = std::get<SentencePair>(ParseCorpusLine(line, CorpusKind::kParallel, 3));
  EXPECT_EQ(pair.id, 9u);
  EXPECT_EQ(pair.src.text, "the cat");
  EXPECT_EQ(pair.tgt.lang, "es");
}

TEST(CorpusReaderTest, RejectsInvalidUtf8AndWrongKind) {
  EXPECT_THROW(
      ParseCorpusLine("{\"lang\":\"en\",\"script\":\"Latn\",\"text\":\"a\xff\"}",
                      CorpusKind::kMono, 0),
      Error);
  EXPECT_THROW(ParseCorpusLine(R"({"lang":"en","script":"Latn","text":"a"})",
                               CorpusKind::kParallel, 0),
               Error);
}

TEST(CorpusReaderTest, OpenReportsMissingFile) {
  try {
    CorpusReader::Open("/nonexistent/corpus.jsonl", CorpusKind::kMono);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(CorpusReaderTest, LoadsCommittedFixtures) {
  EXPECT_EQ(LoadCorpus(testing::DataPath("mono_en.jsonl"), CorpusKind::kMono).size(),
            300u);
  const auto pairs =
      LoadCorpus(testing::DataPath("parallel_en_es.jsonl"), CorpusKind::kParallel);
  ASSERT_EQ(pairs.size(), 200u);
  EXPECT_EQ(std::get<SentencePair>(pairs.front()).id, 1000u);
}

TEST(AssignBranchTest, ExtremeFractions) {
  for (std::uint64_t id = 0; id < 1000; ++id) {
    EXPECT_EQ(AssignBranch(id, 7, 1.0), Branch::kAugment);
    EXPECT_EQ(AssignBranch(id, 7, 0.0), Branch::kVanilla);
  }
}

TEST(AssignBranchTest, HalfSplitOverAMillionIds) {
  std::size_t augmented = 0;
  const std::size_t n = 1'000'000;
  for (std::uint64_t id = 0; id < n; ++id) {
    augmented += AssignBranch(id, 12345, 0.5) == Branch::kAugment;
  }
  EXPECT_NEAR(static_cast<double>(augmented) / n, 0.5, 0.002);
}

TEST(AssignBranchTest, DependsOnlyOnSeedAndId) {
  for (std::uint64_t id = 0; id < 100; ++id) {
    EXPECT_EQ(AssignBranch(id, 3, 0.3), AssignBranch(id, 3, 0.3));
  }
  EXPECT_THROW(AssignBranch(0, 0, 1.5), Error);
  EXPECT_THROW(AssignBranch(0, 0, -0.1), Error);
}

}  // namespace
}  // namespace lexaug
