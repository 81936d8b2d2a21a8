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

// Lexicon-effect analysis: OLS of ChrF deltas on lexicon sizes, and
// per-resourcedness delta tables.

#ifndef LEXAUG_ANALYSIS_H_
#define LEXAUG_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexaug/metrics.h"

namespace lexaug {

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct OlsResult {
  std::vector<double> coefficients;
  double intercept = 0.0;
  double r_squared = 0.0;
  double residual_se = 0.0;
  std::vector<double> fitted;
  std::vector<double> residuals;

  double Predict(std::span<const double> x) const;
};

// Least squares with an intercept, via Householder QR of the centered design.
// Requires rows > cols + 1 (kInsufficientData). A column that is constant or a
// linear combination of earlier columns raises kSingular naming that column;
// `column_names` (optional) supplies the names.
OlsResult OlsFit(const Matrix& x, std::span<const double> y,
                 std::span<const std::string> column_names = {});

struct LangRow {
  std::string lang;
  double delta_chrf = 0.0;
  std::uint64_t n_panlex = 0;
  std::uint64_t n_gatitos = 0;
  std::uint64_t n_mono_sentences = 0;
  Resourcedness resourcedness = Resourcedness::kUrl;
};

// CSV with header lang,delta_chrf,n_panlex,n_gatitos,n_mono,class.
std::vector<LangRow> ParseLangRows(std::istream& in);
std::vector<LangRow> LoadLangRows(const std::string& path);

struct RegressionReport {
  std::vector<std::string> predictors;  // n_panlex, n_gatitos, n_mono
  std::size_t n_rows = 0;
  OlsResult fit;

  std::string ToJson() const;
};

inline constexpr std::size_t kMinRegressionRows = 5;

// Fits delta_chrf ~ n_panlex + n_gatitos + n_mono on URL rows only. Raw
// counts, no transform. Throws kInsufficientData with fewer than 5 URL rows.
RegressionReport RegressDeltaChrf(std::span<const LangRow> rows);

struct DeltaTable {
  std::map<std::string, double> per_lang;
  std::map<Resourcedness, double> class_mean;
  std::map<Resourcedness, std::size_t> class_size;
  double overall_mean = 0.0;

  std::string ToJson() const;
  std::string ToText() const;
};

// candidate - baseline per language, unweighted means per class and overall.
// Throws kInvalidArgument listing the symmetric difference when the language
// sets differ, or naming languages that have no class.
DeltaTable MakeDeltaTable(const std::map<std::string, double>& baseline,
                          const std::map<std::string, double>& candidate,
                          const std::map<std::string, Resourcedness>& classes);

}  // namespace lexaug

#endif  // LEXAUG_ANALYSIS_H_
