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

// Scripted lyric videos without pixels: every word follows an analytic
// motion, and a noise model turns the exact boxes into OCR-like detections
// (dropouts, character substitutions, spurious boxes, vertex jitter).

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyrictrack/corpus.hpp"
#include "lyrictrack/track.hpp"

namespace lyrictrack::synth {

using geometry::Quad;

enum class MotionType { kStatic, kLinear, kScale, kRotate, kCircular };

std::string_view motion_type_name(MotionType type);

struct MotionScript {
  std::string word;
  int t_start = 0;
  int t_end = 0;  // inclusive
  MotionType type = MotionType::kStatic;
  double vx = 0.0;                 // kLinear, px/frame
  double vy = 0.0;
  double scale_rate = 1.0;         // kScale, size factor per frame
  double deg_per_frame = 0.0;      // kRotate
  double radius = 0.0;             // kCircular, px
  double angular_velocity = 0.0;   // kCircular, deg/frame
  Quad start{};

  /// Exact quad at frame t (t_start <= t <= t_end).
  Quad quad_at(int t) const;
};

struct NoiseModel {
  double p_dropout = 0.0;    // a scripted box is missing from a frame
  double p_char_sub = 0.0;   // per character of recognized text
  double p_spurious = 0.0;   // expected distractor boxes per frame
  double jitter_sigma = 0.0; // px, per vertex coordinate
  double p_duplicate = 0.0;  // a second detector reports the same word
  uint64_t seed = 0;

  void validate() const;
};

struct Scenario {
  corpus::VideoMeta meta;
  NoiseModel noise;
  std::vector<MotionScript> scripts;
  bool allow_overlap = false;  // same word on screen twice at once
  int gt_every = 1;            // annotate frames t = 0, n, 2n, ...
};

struct SynthOutput {
  corpus::VideoMeta meta;
  std::vector<corpus::FrameDetections> detections;  // dense, one record per frame
  std::string lyrics_text;
  corpus::GroundTruth gt;
  std::vector<track::Trajectory> gt_tracks;  // uncorrupted, lyric order, k = 1..K
};

/// Throws kScriptOverlap when two scripts with the same word overlap in time
/// (unless allow_overlap), kInvalidArgument for malformed scripts.
SynthOutput generate(const Scenario& scenario);

Scenario parse_scenario(std::string_view json_text);
std::string serialize_scenario(const Scenario& scenario);

struct RandomScenarioParams {
  int frames = 2000;
  int words = 50;
  int width = 1920;
  int height = 1080;
  double fps = 24.0;
  NoiseModel noise;
  int min_word_gap = 24;  // frames between two shows of the same word
  int gt_every = 1;
  std::string id = "synthetic";
};

/// Phrases of 2-5 staggered words separated by pauses, each word with a
/// randomly drawn motion. Deterministic in `seed`.
Scenario random_scenario(const RandomScenarioParams& params, uint64_t seed);

/// Average-video scale: 5,471 frames at 24 fps and 338 lyric words.
RandomScenarioParams full_scale_params();

struct CorpusStats {
  std::size_t frames = 0;
  std::size_t boxes = 0;
  double boxes_per_frame = 0.0;
  std::size_t distinct_words = 0;
};

CorpusStats corpus_stats(std::span<const corpus::FrameDetections> detections);

/// Writes detections.jsonl, gt.json, lyrics.txt, video.meta.json and
/// gt_tracks.jsonl into `dir`.
void write_outputs(const SynthOutput& out, const std::filesystem::path& dir);

std::span<const std::string_view> lyric_vocabulary();
std::span<const std::string_view> distractor_words();

}  // namespace lyrictrack::synth
