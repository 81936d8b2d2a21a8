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

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lexaug/error.h"
#include "lexaug/metrics.h"
#include "test_util.h"

namespace lexaug {
namespace {

struct ChrfCase {
  std::string hyp;
  std::string ref;
  double sentence = 0.0;
};

struct ChrfFixture {
  std::vector<ChrfCase> cases;
  double corpus = 0.0;
  double corpus_first50 = 0.0;
};

ChrfFixture LoadChrfFixture() {
  ChrfFixture f;
  std::ifstream in(testing::DataPath("chrf_fixture.jsonl"));
  std::string line;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("corpus")) {
      f.corpus = j["corpus"];
      f.corpus_first50 = j["corpus_first50"];
    } else {
      f.cases.push_back({j["hyp"], j["ref"], j["sentence"]});
    }
  }
  return f;
}

TEST(ChrfTest, Signature) {
  EXPECT_EQ(ChrfParams{}.Signature(), "nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no");
}

TEST(ChrfTest, PerfectAndDisjoint) {
  EXPECT_DOUBLE_EQ(Chrf("The kitten lies", "The kitten lies"), 100.0);
  EXPECT_DOUBLE_EQ(Chrf("xyz", "abc"), 0.0);
  EXPECT_DOUBLE_EQ(Chrf("", "abc"), 0.0);
  EXPECT_THROW(Chrf("abc", ""), Error);
}

TEST(ChrfTest, MatchesReferenceOnShortPair) {
  // sacrebleu 2.3.1: CHRF().sentence_score("cat sat", ["cat sit"]).score
  EXPECT_NEAR(Chrf("cat sat", "cat sit"), 37.77777777777778, 1e-4);
}

TEST(ChrfTest, MatchesReferenceFixture) {
  const ChrfFixture f = LoadChrfFixture();
  ASSERT_EQ(f.cases.size(), 200u);
  std::vector<std::string> hyps, refs;
  for (const ChrfCase& c : f.cases) {
    EXPECT_NEAR(Chrf(c.hyp, c.ref), c.sentence, 1e-4) << c.hyp << " | " << c.ref;
    hyps.push_back(c.hyp);
    refs.push_back(c.ref);
  }
  EXPECT_NEAR(CorpusChrf(hyps, refs), f.corpus, 1e-4);
  const std::vector<std::string> h50(hyps.begin(), hyps.begin() + 50);
  const std::vector<std::string> r50(refs.begin(), refs.begin() + 50);
  EXPECT_NEAR(CorpusChrf(h50, r50), f.corpus_first50, 1e-4);
}

TEST(ChrfTest, CorpusOfOneRowIsSentenceScore) {
  const std::vector<std::string> h = {"cat sat"}, r = {"cat sit"};
  EXPECT_DOUBLE_EQ(CorpusChrf(h, r), Chrf("cat sat", "cat sit"));
  const std::vector<std::string> same = {"a b", "c d"};
  EXPECT_DOUBLE_EQ(CorpusChrf(same, same), 100.0);
  EXPECT_THROW(CorpusChrf(std::vector<std::string>{}, std::vector<std::string>{}), Error);
}

TEST(ChrfTest, StatsAreAdditive) {
  ChrfStats total = ChrfSentenceStats("cat sat", "cat sit");
  total += ChrfSentenceStats("the dog", "a dog");
  const std::vector<std::string> h = {"cat sat", "the dog"}, r = {"cat sit", "a dog"};
  EXPECT_DOUBLE_EQ(ChrfFromStats(total), CorpusChrf(h, r));
}

using Rows = std::vector<std::pair<std::string, std::string>>;

TEST(HitRateTest, KittenPumaExample) {
  const Rows rows = {{"kitten lie on floor", "The kitten lies"},
                     {"Crocodile charge they phone", "A Puma eats hot chip"}};
  const HitRate hr = TokenHitRate(rows, {"kitten", "puma"});
  ASSERT_TRUE(hr.rate.has_value());
  EXPECT_EQ(*hr.rate, 0.5);
  EXPECT_EQ(hr.relevant, 2u);
  EXPECT_EQ(hr.hits, 1u);
}

TEST(HitRateTest, AllHitAndUndefined) {
  const Rows rows = {{"a kitten", "the kitten"}, {"puma!", "A Puma"}, {"x", "y"}};
  EXPECT_EQ(*TokenHitRate(rows, {"kitten", "puma"}).rate, 1.0);
  EXPECT_FALSE(TokenHitRate(rows, {"lion"}).rate.has_value());
  EXPECT_THROW(TokenHitRate(rows, {}), Error);
}

TEST(HitRateTest, MultiTokenEntriesNeedContiguousRuns) {
  const Rows rows = {{"new the york", "in New York"}, {"New York!", "New York"}};
  const HitRate hr = TokenHitRate(rows, {"new york"});
  EXPECT_EQ(hr.relevant, 2u);
  EXPECT_EQ(hr.hits, 1u);
}

TEST(DetectorTest, NullOutputs) {
  EXPECT_TRUE(DetectNull("??"));
  EXPECT_TRUE(DetectNull("---"));
  EXPECT_TRUE(DetectNull("  "));
  EXPECT_TRUE(DetectNull(""));
  EXPECT_TRUE(DetectNull("? !"));
  EXPECT_FALSE(DetectNull("The cat sat."));
  EXPECT_FALSE(DetectNull("3"));
}

TEST(DetectorTest, CopySimilarity) {
  EXPECT_DOUBLE_EQ(CopySimilarity("same text", "same text"), 1.0);
  EXPECT_TRUE(IsCopy(CopySimilarity("same text", "same text")));
  EXPECT_DOUBLE_EQ(CopySimilarity("abc", "abd"), 2.0 / 3.0);
  EXPECT_FALSE(IsCopy(2.0 / 3.0));
  const double boundary = CopySimilarity("abcdefghijklmnopqrst", "abcdefghijklmnopq");
  EXPECT_EQ(boundary, 0.85);
  EXPECT_FALSE(IsCopy(boundary));
  EXPECT_DOUBLE_EQ(CopySimilarity("aab", "ab"), 2.0 / 3.0);
  EXPECT_THROW(CopySimilarity("", "x"), Error);
}

TEST(DetectorTest, Repetition) {
  EXPECT_DOUBLE_EQ(RepetitionRatio("la la la la"), 4.0);
  EXPECT_TRUE(DetectRepetition("la la la la"));
  EXPECT_DOUBLE_EQ(RepetitionRatio("a b c"), 1.0);
  EXPECT_FALSE(DetectRepetition("a b c"));
  EXPECT_DOUBLE_EQ(RepetitionRatio("go go go"), 3.0);
  EXPECT_FALSE(DetectRepetition("go go go"));
  EXPECT_FALSE(DetectRepetition(""));
}

TEST(ResourcednessTest, Thresholds) {
  EXPECT_EQ(ClassifyResourcedness(0), Resourcedness::kUrl);
  EXPECT_EQ(ClassifyResourcedness(1), Resourcedness::kLrl);
  EXPECT_EQ(ClassifyResourcedness(360'000'000), Resourcedness::kLrl);
  EXPECT_EQ(ClassifyResourcedness(360'000'001), Resourcedness::kMrl);
  EXPECT_EQ(ClassifyResourcedness(500'000'000), Resourcedness::kMrl);
  EXPECT_EQ(ClassifyResourcedness(2'000'000'000), Resourcedness::kMrl);
  EXPECT_EQ(ClassifyResourcedness(2'500'000'000), Resourcedness::kHrl);
  EXPECT_EQ(ParseResourcedness("URL"), Resourcedness::kUrl);
  EXPECT_EQ(ResourcednessName(Resourcedness::kHrl), "HRL");
}

EvalRow Row(std::string source, std::string hyp, std::string ref = "ref") {
  EvalRow r;
  r.lang = "es";
  r.source = std::move(source);
  r.hypothesis = std::move(hyp);
  r.reference = std::move(ref);
  return r;
}

TEST(DiagnoseTest, CleanCorpus) {
  const std::vector<EvalRow> rows = {Row("The cat", "Кошка"), Row("A dog", "Собака")};
  const ErrorReport r = DiagnoseCorpus(rows);
  EXPECT_EQ(r.NullPercent(), 0.0);
  EXPECT_EQ(r.CopyPercent(), 0.0);
  EXPECT_EQ(r.RepetitionPercent(), 0.0);
  EXPECT_THROW(DiagnoseCorpus(std::vector<EvalRow>{}), Error);
}

TEST(DiagnoseTest, HandBuiltFixture) {
  const auto rows = LoadEvalRows(testing::DataPath("diagnose_rows.jsonl"));
  ASSERT_EQ(rows.size(), 10u);
  const ErrorReport r = DiagnoseCorpus(rows);
  EXPECT_EQ(r.total, 10u);
  EXPECT_EQ(r.copies, 2u);
  EXPECT_EQ(r.null_outputs, 1u);
  EXPECT_EQ(r.repetitions, 1u);
  EXPECT_DOUBLE_EQ(r.CopyPercent(), 20.0);
  EXPECT_DOUBLE_EQ(r.NullPercent(), 10.0);
  EXPECT_DOUBLE_EQ(r.RepetitionPercent(), 10.0);
}

TEST(DiagnoseTest, DetectorsAreIndependent) {
  const std::vector<EvalRow> rows = {Row("la la la la", "la la la la")};
  const ErrorReport r = DiagnoseCorpus(rows);
  EXPECT_EQ(r.copies, 1u);
  EXPECT_EQ(r.repetitions, 1u);
}

TEST(EvalRowTest, ParsesAndRejects) {
  const EvalRow r = ParseEvalRow(
      R"({"lang":"yo","direction":"en_to_xx","source":"s","hypothesis":"h","reference":"r"})");
  EXPECT_EQ(r.lang, "yo");
  EXPECT_EQ(r.direction, Direction::kEnToXx);
  EXPECT_THROW(ParseEvalRow(R"({"lang":"yo","direction":"sideways","source":"",)"
                            R"("hypothesis":"h","reference":"r"})"),
               Error);
  testing::TempDir dir("evalrows");
  testing::WriteFile(dir.File("rows.jsonl"),
                     R"({"lang":"yo","direction":"en_to_xx","source":"s","hypothesis":"h","reference":"r"})" "\n"
                     R"({"lang":"yo","direction":"en_to_xx","source":"s","hypothesis":"h","reference":""})" "\n");
  try {
    LoadEvalRows(dir.File("rows.jsonl"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace lexaug
