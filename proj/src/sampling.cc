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

#include "lexaug/sampling.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "lexaug/error.h"
#include "lexaug/lexicon.h"

namespace lexaug {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t StableHash(std::uint64_t a, std::uint64_t b) {
  return Mix64(Mix64(a + kGoldenGamma) ^ (b * 0xD6E8FEB86659FD93ULL));
}

double ToUnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_(StableHash(seed, stream)) {}

std::uint64_t Rng::NextU64() { return Mix64(key_ + ++counter_ * kGoldenGamma); }

double Rng::NextDouble() { return ToUnitInterval(NextU64()); }

std::uint64_t Rng::UniformInt(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(ErrorCode::kInvalidArgument, "UniformInt bound must be > 0");
  }
  unsigned __int128 m =
      static_cast<unsigned __int128>(NextU64()) * static_cast<unsigned __int128>(bound);
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(NextU64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Rng DeriveRng(std::uint64_t seed, std::uint64_t record_id) {
  return Rng(seed, record_id);
}

void SelectionParams::Validate() const {
  if (!(p_tr >= 0.0 && p_tr <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p_tr must lie in [0, 1]");
  }
}

double AdjustedProbability(std::size_t n, std::size_t k, double p_tr) {
  if (k == 0) return 0.0;
  return std::min(static_cast<double>(n) * p_tr / static_cast<double>(k), 1.0);
}

std::vector<std::size_t> SelectBinomialAdjusted(
    std::span<const std::size_t> translatable, std::size_t n,
    const SelectionParams& params, Rng& rng) {
  const double p = AdjustedProbability(n, translatable.size(), params.p_tr);
  std::vector<std::size_t> out;
  for (std::size_t index : translatable) {
    if (rng.NextDouble() < p) out.push_back(index);
  }
  return out;
}

std::vector<std::size_t> SelectUniformCount(
    std::span<const std::size_t> translatable, Rng& rng) {
  const std::size_t k = translatable.size();
  const std::size_t m = rng.UniformInt(k + 1);
  std::vector<std::size_t> pool(translatable.begin(), translatable.end());
  // Partial Fisher-Yates: the first m slots form a uniform m-subset.
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.UniformInt(k - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::size_t> SelectTokens(std::span<const std::size_t> translatable,
                                      std::size_t n,
                                      const SelectionParams& params, Rng& rng) {
  switch (params.mode) {
    case SelectionMode::kBinomialAdjusted:
      return SelectBinomialAdjusted(translatable, n, params, rng);
    case SelectionMode::kUniformCount:
      return SelectUniformCount(translatable, rng);
  }
  return {};
}

const LexEntry& ChooseTranslation(std::span<const LexEntry* const> candidates,
                                  Rng& rng,
                                  std::optional<std::string_view> tgt_lang) {
  if (!tgt_lang) {
    if (candidates.empty()) {
      throw Error(ErrorCode::kNoCandidate, "no translation candidates");
    }
    return *candidates[rng.UniformInt(candidates.size())];
  }
  std::vector<const LexEntry*> filtered;
  for (const LexEntry* e : candidates) {
    if (e->tgt_lang == *tgt_lang) filtered.push_back(e);
  }
  if (filtered.empty()) {
    throw Error(ErrorCode::kNoCandidate,
                "no translation candidates in " + std::string(*tgt_lang));
  }
  return *filtered[rng.UniformInt(filtered.size())];
}

}  // namespace lexaug
