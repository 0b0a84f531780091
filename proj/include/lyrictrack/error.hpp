// Copyright 2026 The LyricTrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lyrictrack {

// Numeric values are shared with the C API status codes and the CLI exit codes.
enum class ErrorCode : int {
  kInternal = 1,
  kInvalidArgument = 2,
  kSchema = 3,
  kInfeasiblePath = 4,
  kTooFewVideos = 5,
  kIo = 6,
  kEmptyLyrics = 7,
  kNonMonotoneFrames = 8,
  kMissingGroundTruth = 9,
  kInvalidK = 10,
  kOutOfBucketRange = 11,
  kScriptOverlap = 12,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Schema violations carry the 1-based line (or record) number when known.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message, long line = 0)
      : Error(ErrorCode::kSchema,
              line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace lyrictrack
