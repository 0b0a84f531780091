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

// Data model and interchange formats for one lyric video: the lyric word
// sequence, per-frame text detections, video metadata and ground truth.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lyrictrack/geometry.hpp"

namespace lyrictrack::corpus {

using geometry::Quad;

struct LyricWord {
  int index = 0;      // 1-based position in the lyrics
  std::string text;   // normalized, never empty
  std::string raw;
};

struct LyricSequence {
  std::vector<LyricWord> words;

  std::size_t size() const { return words.size(); }
  const LyricWord& operator[](std::size_t i) const { return words[i]; }
};

struct Detection {
  Quad quad{};
  std::string text;  // normalized
  double confidence = 1.0;
  std::string detector;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct FrameDetections {
  int t = 0;  // 0-based frame index
  std::vector<Detection> boxes;

  friend bool operator==(const FrameDetections&, const FrameDetections&) = default;
};

struct VideoMeta {
  std::string id;
  double fps = 24.0;
  int width = 1920;
  int height = 1080;
  int frames = 1;

  double diagonal() const;
  friend bool operator==(const VideoMeta&, const VideoMeta&) = default;
};

/// Dense per-frame view of one video: frames[t].t == t for t in [0, T).
struct Video {
  VideoMeta meta;
  std::vector<FrameDetections> frames;

  int frame_count() const { return static_cast<int>(frames.size()); }
};

struct GtBox {
  Quad quad{};
  std::string text;  // normalized

  friend bool operator==(const GtBox&, const GtBox&) = default;
};

struct GtFrame {
  int t = 0;
  std::vector<GtBox> boxes;

  friend bool operator==(const GtFrame&, const GtFrame&) = default;
};

struct GroundTruth {
  std::vector<GtFrame> frames;
};

/// Splits on whitespace and normalizes each token; throws kEmptyLyrics when
/// nothing survives normalization.
LyricSequence tokenize_lyrics(std::string_view raw_text);

/// Parses a detections.jsonl stream. Blank lines are skipped. Throws
/// SchemaError (with line number) or Error(kNonMonotoneFrames).
std::vector<FrameDetections> parse_detections(std::istream& in);
void serialize_detections(std::ostream& out, const std::vector<FrameDetections>& frames);

VideoMeta parse_meta(std::string_view json_text);
std::string serialize_meta(const VideoMeta& meta);

GroundTruth parse_ground_truth(std::string_view json_text);
std::string serialize_ground_truth(const GroundTruth& gt);

/// Expands sparse frame records to a dense store of meta.frames frames.
/// Records outside [0, meta.frames) are a schema error.
Video make_video(const VideoMeta& meta, const std::vector<FrameDetections>& sparse);

/// Removes cross-detector duplicates: boxes from different detectors with
/// equal text and IoU >= overlap_threshold. Boxes are visited by descending
/// confidence (input order on ties) and a box is dropped when it duplicates
/// one already kept. Surviving boxes keep their input order.
FrameDetections dedup_detections(const FrameDetections& frame, double overlap_threshold = 0.5);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::vector<FrameDetections> load_detections(const std::filesystem::path& path);
void save_detections(const std::filesystem::path& path, const std::vector<FrameDetections>& frames);
VideoMeta load_meta(const std::filesystem::path& path);
GroundTruth load_ground_truth(const std::filesystem::path& path);
LyricSequence load_lyrics(const std::filesystem::path& path);

}  // namespace lyrictrack::corpus
