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

// Per-word tracking: grow each anchor frame-by-frame in both directions
// using word similarity plus spatial/scale continuity, then fill interior
// holes by low-degree polynomial fits of the box parameters.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyrictrack/align.hpp"
#include "lyrictrack/corpus.hpp"

namespace lyrictrack::track {

using geometry::Quad;

enum class FrameSource { kDetected, kSearched, kInterpolated };

std::string_view source_tag(FrameSource s);  // "det" | "search" | "interp"

struct TrackedFrame {
  int t = 0;
  Quad quad{};
  FrameSource source = FrameSource::kDetected;

  friend bool operator==(const TrackedFrame&, const TrackedFrame&) = default;
};

struct Trajectory {
  int k = 0;
  std::string word;
  int anchor_t = 0;
  std::vector<TrackedFrame> frames;  // ascending t

  const TrackedFrame* find(int t) const;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct TrackParams {
  double word_sim = 0.34;  // max normalized edit distance
  double max_move = 0.10;  // max center shift per frame of gap, fraction of frame diagonal
  double min_scale = 0.5;  // area ratio must lie in [min_scale, 1 / min_scale]
  int max_miss = 12;       // consecutive misses that end a scan direction

  /// Throws kInvalidArgument on out-of-range values.
  void validate() const;
};

/// Edit distance divided by the longer length (0 for two empty strings).
double normalized_edit_distance(std::string_view a, std::string_view b);

/// Neighbor search around one anchor. The result may contain holes; the
/// anchor frame is marked Detected and every other accepted frame Searched.
Trajectory extend_track(const align::Anchor& anchor, std::span<const corpus::FrameDetections> frames,
                        double frame_diagonal, const TrackParams& params = {});

/// Fills interior holes only. Each of center x/y, width, height and angle is
/// fitted over all observed frames with a least-squares polynomial of degree
/// min(2, n_observed - 1). Observed frames are left untouched.
Trajectory interpolate_gaps(const Trajectory& traj);

/// extend_track + interpolate_gaps per anchor, in lyric order. Anchors
/// without a box (empty anchor frame) yield no trajectory.
std::vector<Trajectory> track_all(const align::MatchResult& match, const corpus::Video& video,
                                  const TrackParams& params = {}, int threads = 1);

void serialize_trajectories(std::ostream& out, const std::vector<Trajectory>& trajs);
std::vector<Trajectory> parse_trajectories(std::istream& in);

void save_trajectories(const std::filesystem::path& path, const std::vector<Trajectory>& trajs);
std::vector<Trajectory> load_trajectories(const std::filesystem::path& path);

}  // namespace lyrictrack::track
