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

#ifndef LEXAUG_ERROR_H_
#define LEXAUG_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lexaug {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kIo,
  kConfig,
  kEmptyInput,
  kNoCandidate,
  kSingular,
  kInsufficientData,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error. `line()` is the 1-based input
// line the error refers to, or 0 when the error is not tied to a line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace lexaug

#endif  // LEXAUG_ERROR_H_
