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

#include "lexaug/error.h"

namespace lexaug {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "INVALID_ARGUMENT";
    case ErrorCode::kParse:
      return "PARSE";
    case ErrorCode::kIo:
      return "IO";
    case ErrorCode::kConfig:
      return "CONFIG";
    case ErrorCode::kEmptyInput:
      return "EMPTY_INPUT";
    case ErrorCode::kNoCandidate:
      return "NO_CANDIDATE";
    case ErrorCode::kSingular:
      return "SINGULAR";
    case ErrorCode::kInsufficientData:
      return "INSUFFICIENT_DATA";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(message), code_(code), line_(line) {}

}  // namespace lexaug
