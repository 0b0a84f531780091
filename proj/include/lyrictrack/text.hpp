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

#include <string>
#include <string_view>

namespace lyrictrack::text {

/// Uppercases ASCII letters and strips leading/trailing characters that are
/// neither ASCII alphanumerics nor non-ASCII (UTF-8 continuation / lead)
/// bytes. Inner punctuation such as apostrophes and hyphens is kept.
std::string normalize_word(std::string_view raw);

/// Decodes UTF-8 into code points. Invalid bytes decode to themselves so
/// that distances stay defined on arbitrary recognizer output.
std::u32string decode_utf8(std::string_view s);

std::size_t codepoint_length(std::string_view s);

}  // namespace lyrictrack::text
