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

// Deterministic randomness and token selection.
//
// Every random decision in the pipeline is drawn from an Rng derived from
// (seed, record_id), so results never depend on processing order or on the
// number of worker threads.

#ifndef LEXAUG_SAMPLING_H_
#define LEXAUG_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lexaug {

struct LexEntry;

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t z);

// Stable hash of an ordered pair of 64-bit values. Identical on every
// platform.
std::uint64_t StableHash(std::uint64_t a, std::uint64_t b);

// Top 53 bits of `bits` as a double in [0, 1).
double ToUnitInterval(std::uint64_t bits);

// Counter-based generator: the i-th output is Mix64(key + i * golden_gamma),
// i.e. SplitMix64 keyed by StableHash(seed, stream). Output is a pure
// function of (seed, stream, counter).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t NextU64();
  // Uniform on [0, 1).
  double NextDouble();
  // Uniform on {0, ..., bound - 1}; bound must be > 0. Uses Lemire's
  // multiply-and-reject method so the result is exact and portable.
  std::uint64_t UniformInt(std::uint64_t bound);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

Rng DeriveRng(std::uint64_t seed, std::uint64_t record_id);

enum class SelectionMode { kBinomialAdjusted, kUniformCount };

struct SelectionParams {
  double p_tr = 0.4;
  SelectionMode mode = SelectionMode::kBinomialAdjusted;

  // Throws kInvalidArgument unless p_tr is in [0, 1].
  void Validate() const;
};

// min(n * p_tr / k, 1), or 0 when k == 0.
double AdjustedProbability(std::size_t n, std::size_t k, double p_tr);

// Keeps each element of `translatable` independently with probability
// AdjustedProbability(n, k, p_tr). Output preserves input order.
std::vector<std::size_t> SelectBinomialAdjusted(
    std::span<const std::size_t> translatable, std::size_t n,
    const SelectionParams& params, Rng& rng);

// Draws m uniformly from {0, ..., k}, then returns a uniformly random
// m-subset (seeded shuffle, then prefix). Output is sorted ascending.
std::vector<std::size_t> SelectUniformCount(
    std::span<const std::size_t> translatable, Rng& rng);

// Dispatches on params.mode.
std::vector<std::size_t> SelectTokens(std::span<const std::size_t> translatable,
                                      std::size_t n,
                                      const SelectionParams& params, Rng& rng);

// Uniform choice among candidates, optionally restricted to one target
// language. Throws Error(kNoCandidate) if nothing survives the filter.
const LexEntry& ChooseTranslation(
    std::span<const LexEntry* const> candidates, Rng& rng,
    std::optional<std::string_view> tgt_lang = std::nullopt);

}  // namespace lexaug

#endif  // LEXAUG_SAMPLING_H_
