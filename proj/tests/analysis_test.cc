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

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lexaug/analysis.h"
#include "lexaug/error.h"
#include "lexaug/sampling.h"

namespace lexaug {
namespace {

TEST(OlsTest, NoiselessLine) {
  Matrix x(5, 1);
  std::vector<double> y;
  for (int i = 0; i < 5; ++i) {
    x(i, 0) = i + 1;
    y.push_back(2.0 * (i + 1));
  }
  const OlsResult r = OlsFit(x, y);
  EXPECT_NEAR(r.coefficients[0], 2.0, 1e-12);
  EXPECT_NEAR(r.intercept, 0.0, 1e-12);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(r.residual_se, 0.0, 1e-12);
  const double probe[] = {10.0};
  EXPECT_NEAR(r.Predict(probe), 20.0, 1e-10);
}

TEST(OlsTest, ConstantResponse) {
  Matrix x(4, 1);
  const std::vector<double> y = {3.5, 3.5, 3.5, 3.5};
  for (int i = 0; i < 4; ++i) x(i, 0) = i * i;
  const OlsResult r = OlsFit(x, y);
  EXPECT_NEAR(r.coefficients[0], 0.0, 1e-12);
  EXPECT_NEAR(r.intercept, 3.5, 1e-12);
  EXPECT_EQ(r.r_squared, 1.0);
}

TEST(OlsTest, RecoversPlantedCoefficients) {
  Rng rng(2026, 0);
  const std::size_t m = 200;
  Matrix x(m, 3);
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    x(i, 0) = static_cast<double>(rng.UniformInt(100'000));
    x(i, 1) = static_cast<double>(rng.UniformInt(4'000));
    x(i, 2) = static_cast<double>(rng.UniformInt(1'000'000));
    y[i] = 4.0 + 0.3 * x(i, 0) + 1.2 * x(i, 1) - 0.05 * x(i, 2);
  }
  const OlsResult r = OlsFit(x, y);
  EXPECT_NEAR(r.coefficients[0], 0.3, 1e-6);
  EXPECT_NEAR(r.coefficients[1], 1.2, 1e-6);
  EXPECT_NEAR(r.coefficients[2], -0.05, 1e-6);
  EXPECT_NEAR(r.intercept, 4.0, 1e-6);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  ASSERT_EQ(r.residuals.size(), m);
}

TEST(OlsTest, ResidualStandardError) {
  Matrix x(4, 1);
  const std::vector<double> y = {1.0, 3.0, 2.0, 4.0};
  for (int i = 0; i < 4; ++i) x(i, 0) = i;
  const OlsResult r = OlsFit(x, y);
  // Hand computation: slope 0.8, intercept 1.3, SSR = 1.8, dof 2.
  EXPECT_NEAR(r.coefficients[0], 0.8, 1e-12);
  EXPECT_NEAR(r.intercept, 1.3, 1e-12);
  EXPECT_NEAR(r.residual_se, std::sqrt(0.9), 1e-12);
  EXPECT_NEAR(r.r_squared, 1.0 - 1.8 / 5.0, 1e-12);
}

TEST(OlsTest, SingularAndUnderdetermined) {
  Matrix x(6, 2);
  std::vector<double> y(6);
  for (int i = 0; i < 6; ++i) {
    x(i, 0) = i;
    x(i, 1) = 2 * i + 1;
    y[i] = i;
  }
  const std::vector<std::string> names = {"a", "b"};
  try {
    OlsFit(x, y, names);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingular);
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
  Matrix constant(6, 1);
  for (int i = 0; i < 6; ++i) constant(i, 0) = 7.0;
  EXPECT_THROW(OlsFit(constant, y), Error);
  Matrix small(3, 2);
  try {
    OlsFit(small, std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

std::vector<LangRow> PlantedRows(std::size_t url_rows, bool add_other_classes) {
  Rng rng(7, 7);
  std::vector<LangRow> rows;
  for (std::size_t i = 0; i < url_rows; ++i) {
    LangRow r;
    r.lang = "u" + std::to_string(i);
    r.n_panlex = rng.UniformInt(50'000);
    r.n_gatitos = rng.UniformInt(4'001);
    r.n_mono_sentences = rng.UniformInt(2'000'000);
    r.delta_chrf = 1.5 + 2e-5 * r.n_panlex + 6e-5 * r.n_gatitos + 1e-7 * r.n_mono_sentences;
    r.resourcedness = Resourcedness::kUrl;
    rows.push_back(r);
    if (add_other_classes) {
      LangRow noise = r;
      noise.lang = "h" + std::to_string(i);
      noise.delta_chrf = -100.0 + static_cast<double>(i % 7);
      noise.resourcedness = i % 2 ? Resourcedness::kHrl : Resourcedness::kLrl;
      rows.push_back(noise);
    }
  }
  return rows;
}

TEST(RegressTest, UsesUrlRowsOnly) {
  const RegressionReport r = RegressDeltaChrf(PlantedRows(40, true));
  EXPECT_EQ(r.n_rows, 40u);
  EXPECT_EQ(r.predictors, (std::vector<std::string>{"n_panlex", "n_gatitos", "n_mono"}));
  EXPECT_NEAR(r.fit.coefficients[0], 2e-5, 1e-6);
  EXPECT_NEAR(r.fit.coefficients[1], 6e-5, 1e-6);
  EXPECT_NEAR(r.fit.coefficients[2], 1e-7, 1e-6);
  EXPECT_NEAR(r.fit.intercept, 1.5, 1e-6);
  // Gatitos entries are worth more per entry than Panlex entries here.
  EXPECT_GT(r.fit.coefficients[1], r.fit.coefficients[0]);
  EXPECT_GT(r.fit.coefficients[0], 0.0);
}

TEST(RegressTest, TooFewUrlRows) {
  try {
    RegressDeltaChrf(PlantedRows(4, true));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(LangRowsTest, ParsesCsv) {
  std::istringstream in(
      "lang,delta_chrf,n_panlex,n_gatitos,n_mono,class\n"
      "yo,2.5,1000,4000,200000,URL\n"
      "fr,-0.1,500000,0,900000000,HRL\n");
  const auto rows = ParseLangRows(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].lang, "yo");
  EXPECT_EQ(rows[0].n_gatitos, 4000u);
  EXPECT_EQ(rows[1].resourcedness, Resourcedness::kHrl);
  std::istringstream bad(
      "lang,delta_chrf,n_panlex,n_gatitos,n_mono,class\n"
      "yo,abc,1,1,1,URL\n");
  try {
    ParseLangRows(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream wrong_header("a,b\n");
  EXPECT_THROW(ParseLangRows(wrong_header), Error);
}

TEST(DeltaTableTest, IdenticalRuns) {
  const std::map<std::string, double> scores = {{"yo", 10.0}, {"fr", 50.0}};
  const std::map<std::string, Resourcedness> cls = {{"yo", Resourcedness::kUrl},
                                                    {"fr", Resourcedness::kHrl}};
  const DeltaTable t = MakeDeltaTable(scores, scores, cls);
  for (const auto& [lang, d] : t.per_lang) EXPECT_EQ(d, 0.0) << lang;
  EXPECT_EQ(t.overall_mean, 0.0);
}

TEST(DeltaTableTest, SingleLanguageClass) {
  const DeltaTable t = MakeDeltaTable({{"yo", 10.0}}, {{"yo", 12.0}},
                                      {{"yo", Resourcedness::kUrl}});
  EXPECT_DOUBLE_EQ(t.class_mean.at(Resourcedness::kUrl), 2.0);
}

TEST(DeltaTableTest, FourClassFixture) {
  const std::map<std::string, double> base = {{"de", 60}, {"fr", 58}, {"hi", 40},
                                              {"sw", 30}, {"yo", 10}, {"ig", 12},
                                              {"ha", 20}};
  const std::map<std::string, double> cand = {{"de", 59}, {"fr", 58.5}, {"hi", 41},
                                              {"sw", 32}, {"yo", 17}, {"ig", 20},
                                              {"ha", 23}};
  const std::map<std::string, Resourcedness> cls = {
      {"de", Resourcedness::kHrl}, {"fr", Resourcedness::kHrl},
      {"hi", Resourcedness::kMrl}, {"sw", Resourcedness::kLrl},
      {"yo", Resourcedness::kUrl}, {"ig", Resourcedness::kUrl},
      {"ha", Resourcedness::kUrl}};
  const DeltaTable t = MakeDeltaTable(base, cand, cls);
  EXPECT_DOUBLE_EQ(t.class_mean.at(Resourcedness::kHrl), -0.25);
  EXPECT_DOUBLE_EQ(t.class_mean.at(Resourcedness::kMrl), 1.0);
  EXPECT_DOUBLE_EQ(t.class_mean.at(Resourcedness::kLrl), 2.0);
  EXPECT_DOUBLE_EQ(t.class_mean.at(Resourcedness::kUrl), 6.0);
  EXPECT_EQ(t.class_size.at(Resourcedness::kUrl), 3u);
  EXPECT_DOUBLE_EQ(t.overall_mean, 20.5 / 7.0);
}

TEST(DeltaTableTest, MismatchedLanguages) {
  try {
    MakeDeltaTable({{"yo", 1}, {"fr", 1}}, {{"yo", 1}, {"de", 1}},
                   {{"yo", Resourcedness::kUrl}});
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("fr"), std::string::npos);
    EXPECT_NE(msg.find("de"), std::string::npos);
  }
  EXPECT_THROW(MakeDeltaTable({{"yo", 1}}, {{"yo", 2}}, {}), Error);
}

}  // namespace
}  // namespace lexaug
