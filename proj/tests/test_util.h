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

#ifndef LEXAUG_TESTS_TEST_UTIL_H_
#define LEXAUG_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lexaug/lexicon.h"

namespace lexaug::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(LEXAUG_TEST_DATA_DIR) + "/" + name;
}

// A scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("lexaug_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline LexEntry Entry(std::string src, std::string tgt, std::string src_lang,
                      std::string tgt_lang, std::string script = "Latn",
                      std::string source = "panlex") {
  return LexEntry{std::move(src), std::move(tgt), std::move(src_lang),
                  std::move(tgt_lang), std::move(script), std::move(source)};
}

inline Lexicon MakeLexicon(const std::vector<LexEntry>& entries) {
  Lexicon lex;
  for (const LexEntry& e : entries) lex.Add(e);
  return lex;
}

}  // namespace lexaug::testing

#endif  // LEXAUG_TESTS_TEST_UTIL_H_
