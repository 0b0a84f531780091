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

#include "lyrictrack/error.hpp"

namespace lyrictrack {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInternal: return "InternalError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kInfeasiblePath: return "InfeasiblePath";
    case ErrorCode::kTooFewVideos: return "TooFewVideos";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kEmptyLyrics: return "EmptyLyrics";
    case ErrorCode::kNonMonotoneFrames: return "NonMonotoneFrames";
    case ErrorCode::kMissingGroundTruth: return "MissingGT";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kOutOfBucketRange: return "OutOfBucketRange";
    case ErrorCode::kScriptOverlap: return "ScriptOverlapError";
  }
  return "UnknownError";
}

}  // namespace lyrictrack
