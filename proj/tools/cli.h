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

// The `lexaug` command-line tool. Kept as a library so tests can drive the
// same code paths as the binary.

#ifndef LEXAUG_TOOLS_CLI_H_
#define LEXAUG_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lexaug/augment.h"
#include "lexaug/corpus.h"
#include "lexaug/lexicon.h"
#include "lexaug/sampling.h"

namespace lexaug::cli {

enum class AugmentTask {
  kCodeswitchMono,
  kCodeswitchParallel,
  kGlowupMono,
  kGlowupParallel,
};

enum class Emit { kAll, kAugmented, kVanilla };

struct AugmentConfig {
  AugmentTask task = AugmentTask::kCodeswitchMono;
  std::uint64_t seed = 0;
  double fraction = 0.5;
  SelectionParams selection;
  double mask_fraction = 0.5;
  SentinelInventory sentinels;
  unsigned jobs = 1;
  std::size_t batch_size = 4096;
  ErrorPolicy on_error = ErrorPolicy::kAbort;
  Emit emit = Emit::kAll;
};

struct AugmentStats {
  std::size_t records = 0;
  std::size_t augmented = 0;
  std::size_t vanilla = 0;
  std::size_t dropped = 0;
  std::vector<std::string> messages;
};

CorpusKind KindFor(AugmentTask task);

// Augments every record from `reader` and writes one JSON example per line.
// Records are processed in batches by `config.jobs` threads; output order is
// input order, so the bytes do not depend on the thread count.
AugmentStats RunAugment(const AugmentConfig& config, const Lexicon& lex,
                        CorpusReader& reader, std::ostream& out);

// Hex SHA-256 of a file's contents.
std::string FileSha256(const std::string& path);

// Entry point. Returns the process exit status.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace lexaug::cli

#endif  // LEXAUG_TOOLS_CLI_H_
