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

#include "lexaug/analysis.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lexaug/error.h"
#include "lexaug/unicode.h"

namespace lexaug {
namespace {

// Relative tolerance below which a column is treated as linearly dependent.
constexpr double kRankTolerance = 1e-10;

std::string ColumnName(std::span<const std::string> names, std::size_t j) {
  if (j < names.size()) return names[j];
  return "x" + std::to_string(j);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.emplace_back(unicode::Trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.emplace_back(unicode::Trim(cur));
  return out;
}

std::uint64_t ParseCount(const std::string& field, const char* name) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size() || field.empty() || v < 0 || v != std::floor(v)) {
    throw Error(ErrorCode::kParse,
                std::string("bad ") + name + " value \"" + field + "\"");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

double OlsResult::Predict(std::span<const double> x) const {
  double y = intercept;
  for (std::size_t j = 0; j < coefficients.size() && j < x.size(); ++j) {
    y += coefficients[j] * x[j];
  }
  return y;
}

OlsResult OlsFit(const Matrix& x, std::span<const double> y,
                 std::span<const std::string> column_names) {
  const std::size_t m = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != m) {
    throw Error(ErrorCode::kInvalidArgument, "design/outcome size mismatch");
  }
  if (m <= p + 1) {
    throw Error(ErrorCode::kInsufficientData,
                "need more than " + std::to_string(p + 1) + " rows, got " +
                    std::to_string(m));
  }

  std::vector<double> x_mean(p, 0.0);
  double y_mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    y_mean += y[i];
    for (std::size_t j = 0; j < p; ++j) x_mean[j] += x(i, j);
  }
  y_mean /= static_cast<double>(m);
  for (double& v : x_mean) v /= static_cast<double>(m);

  Matrix a(m, p);
  std::vector<double> b(m);
  std::vector<double> col_norm(p, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = y[i] - y_mean;
    for (std::size_t j = 0; j < p; ++j) {
      a(i, j) = x(i, j) - x_mean[j];
      col_norm[j] += a(i, j) * a(i, j);
    }
  }
  for (double& v : col_norm) v = std::sqrt(v);

  // Householder QR, applying each reflection to b as we go.
  std::vector<double> diag(p);
  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (col_norm[k] == 0.0 || norm <= kRankTolerance * col_norm[k]) {
      throw Error(ErrorCode::kSingular,
                  "design matrix is rank deficient at column " +
                      ColumnName(column_names, k));
    }
    const double alpha = a(k, k) > 0 ? -norm : norm;
    std::vector<double> v(m - k);
    v[0] = a(k, k) - alpha;
    for (std::size_t i = k + 1; i < m; ++i) v[i - k] = a(i, k);
    double vnorm2 = 0.0;
    for (double vi : v) vnorm2 += vi * vi;
    diag[k] = alpha;
    a(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) a(i, k) = 0.0;
    if (vnorm2 == 0.0) continue;
    for (std::size_t j = k + 1; j < p; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * a(i, j);
      const double s = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < m; ++i) a(i, j) -= s * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < m; ++i) dot += v[i - k] * b[i];
    const double s = 2.0 * dot / vnorm2;
    for (std::size_t i = k; i < m; ++i) b[i] -= s * v[i - k];
  }

  OlsResult out;
  out.coefficients.assign(p, 0.0);
  for (std::size_t k = p; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < p; ++j) acc -= a(k, j) * out.coefficients[j];
    out.coefficients[k] = acc / diag[k];
  }
  out.intercept = y_mean;
  for (std::size_t j = 0; j < p; ++j) {
    out.intercept -= out.coefficients[j] * x_mean[j];
  }

  double ssr = 0.0;
  double sst = 0.0;
  out.fitted.resize(m);
  out.residuals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double f = out.intercept;
    for (std::size_t j = 0; j < p; ++j) f += out.coefficients[j] * x(i, j);
    out.fitted[i] = f;
    out.residuals[i] = y[i] - f;
    ssr += out.residuals[i] * out.residuals[i];
    sst += (y[i] - y_mean) * (y[i] - y_mean);
  }
  // A constant outcome is fit exactly by the intercept.
  out.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
  out.residual_se = std::sqrt(ssr / static_cast<double>(m - p - 1));
  return out;
}

std::vector<LangRow> ParseLangRows(std::istream& in) {
  static const std::vector<std::string> kHeader = {
      "lang", "delta_chrf", "n_panlex", "n_gatitos", "n_mono", "class"};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (SplitCsv(line) != kHeader) {
    throw Error(ErrorCode::kParse,
                "expected header lang,delta_chrf,n_panlex,n_gatitos,n_mono,class",
                1);
  }
  std::vector<LangRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (unicode::Trim(line).empty()) continue;
    try {
      const auto f = SplitCsv(line);
      if (f.size() != kHeader.size()) {
        throw Error(ErrorCode::kParse, "expected 6 columns, got " +
                                           std::to_string(f.size()));
      }
      LangRow r;
      r.lang = f[0];
      std::size_t used = 0;
      r.delta_chrf = std::stod(f[1], &used);
      if (used != f[1].size()) throw Error(ErrorCode::kParse, "bad delta_chrf");
      r.n_panlex = ParseCount(f[2], "n_panlex");
      r.n_gatitos = ParseCount(f[3], "n_gatitos");
      r.n_mono_sentences = ParseCount(f[4], "n_mono");
      const auto cls = ParseResourcedness(f[5]);
      if (!cls) throw Error(ErrorCode::kParse, "unknown class \"" + f[5] + "\"");
      r.resourcedness = *cls;
      rows.push_back(std::move(r));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": bad number", line_no);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return rows;
}

std::vector<LangRow> LoadLangRows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return ParseLangRows(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what(), e.line());
  }
}

std::string RegressionReport::ToJson() const {
  nlohmann::ordered_json j;
  j["n_rows"] = n_rows;
  nlohmann::ordered_json coef = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < predictors.size(); ++i) {
    coef[predictors[i]] = fit.coefficients[i];
  }
  j["coefficients"] = coef;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["residual_se"] = fit.residual_se;
  return j.dump(2);
}

RegressionReport RegressDeltaChrf(std::span<const LangRow> rows) {
  std::vector<const LangRow*> url;
  for (const LangRow& r : rows) {
    if (r.resourcedness == Resourcedness::kUrl) url.push_back(&r);
  }
  if (url.size() < kMinRegressionRows) {
    throw Error(ErrorCode::kInsufficientData,
                "regression needs at least " + std::to_string(kMinRegressionRows) +
                    " URL rows, got " + std::to_string(url.size()));
  }
  RegressionReport report;
  report.predictors = {"n_panlex", "n_gatitos", "n_mono"};
  report.n_rows = url.size();
  Matrix x(url.size(), 3);
  std::vector<double> y(url.size());
  for (std::size_t i = 0; i < url.size(); ++i) {
    x(i, 0) = static_cast<double>(url[i]->n_panlex);
    x(i, 1) = static_cast<double>(url[i]->n_gatitos);
    x(i, 2) = static_cast<double>(url[i]->n_mono_sentences);
    y[i] = url[i]->delta_chrf;
  }
  report.fit = OlsFit(x, y, report.predictors);
  return report;
}

DeltaTable MakeDeltaTable(const std::map<std::string, double>& baseline,
                          const std::map<std::string, double>& candidate,
                          const std::map<std::string, Resourcedness>& classes) {
  std::vector<std::string> only_baseline, only_candidate;
  for (const auto& [lang, v] : baseline) {
    if (!candidate.count(lang)) only_baseline.push_back(lang);
  }
  for (const auto& [lang, v] : candidate) {
    if (!baseline.count(lang)) only_candidate.push_back(lang);
  }
  if (!only_baseline.empty() || !only_candidate.empty()) {
    std::string msg = "language sets differ; only in baseline: [";
    for (std::size_t i = 0; i < only_baseline.size(); ++i) {
      msg += (i ? ", " : "") + only_baseline[i];
    }
    msg += "], only in candidate: [";
    for (std::size_t i = 0; i < only_candidate.size(); ++i) {
      msg += (i ? ", " : "") + only_candidate[i];
    }
    msg += "]";
    throw Error(ErrorCode::kInvalidArgument, msg);
  }
  if (baseline.empty()) throw Error(ErrorCode::kEmptyInput, "no languages");

  DeltaTable t;
  std::map<Resourcedness, double> sums;
  double total = 0.0;
  for (const auto& [lang, base] : baseline) {
    auto cls = classes.find(lang);
    if (cls == classes.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no class for language " + lang);
    }
    const double d = candidate.at(lang) - base;
    t.per_lang[lang] = d;
    sums[cls->second] += d;
    ++t.class_size[cls->second];
    total += d;
  }
  for (const auto& [cls, sum] : sums) {
    t.class_mean[cls] = sum / static_cast<double>(t.class_size[cls]);
  }
  t.overall_mean = total / static_cast<double>(baseline.size());
  return t;
}

std::string DeltaTable::ToJson() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto& [cls, mean] : class_mean) {
    classes[std::string(ResourcednessName(cls))] = {
        {"mean_delta", mean}, {"n", class_size.at(cls)}};
  }
  j["classes"] = classes;
  j["overall_mean_delta"] = overall_mean;
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (const auto& [lang, d] : per_lang) langs[lang] = d;
  j["per_lang"] = langs;
  return j.dump(2);
}

std::string DeltaTable::ToText() const {
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-8s %6s %10s\n", "class", "n", "delta");
  out += buf;
  for (const auto& [cls, mean] : class_mean) {
    std::snprintf(buf, sizeof buf, "%-8s %6zu %+10.2f\n",
                  std::string(ResourcednessName(cls)).c_str(),
                  class_size.at(cls), mean);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%-8s %6zu %+10.2f\n", "all", per_lang.size(),
                overall_mean);
  out += buf;
  return out;
}

}  // namespace lexaug
