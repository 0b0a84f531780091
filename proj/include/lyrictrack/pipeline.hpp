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

// Stage glue shared by the C API and the tests: loading a video from its
// files and running the corpus-level motion analysis.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lyrictrack/align.hpp"
#include "lyrictrack/corpus.hpp"
#include "lyrictrack/motion.hpp"
#include "lyrictrack/track.hpp"

namespace lyrictrack::pipeline {

struct LoadedVideo {
  corpus::Video video;
  corpus::LyricSequence lyrics;
};

/// Detections are deduplicated per frame when `dedup_overlap` is set.
/// `lyrics` may be empty for stages that do not need them.
LoadedVideo load_video(const std::filesystem::path& detections, const std::filesystem::path& meta,
                       const std::filesystem::path& lyrics, std::optional<double> dedup_overlap = 0.5);

/// Trajectories restricted to the anchor frames, as scored in MA mode when
/// only anchors are available.
std::vector<track::Trajectory> anchor_trajectories(const align::MatchResult& match);

struct AnalyzeConfig {
  motion::MotionConfig motion;
  int k_min = 2;
  int k_max = 10;
  int restarts = 10;
};

/// Throws kInvalidArgument / kInvalidK for unusable settings.
void validate(const AnalyzeConfig& config);

struct VideoTracks {
  corpus::VideoMeta meta;
  std::vector<track::Trajectory> trajectories;
};

struct Analysis {
  motion::MotionModel model;
  std::vector<motion::MotionHistogram> histograms;  // every input video, input order
  std::vector<std::size_t> clustered;               // indices of non-empty histograms
  motion::VideoClustering clustering;                // over `clustered`
  std::vector<std::vector<double>> means;
  std::vector<int> sizes;
};

/// Representatives from all videos' curves, one histogram per video, then
/// k-means over the videos with at least one bucketed trajectory. Throws
/// kTooFewVideos when fewer than three such videos remain.
Analysis analyze(std::span<const VideoTracks> videos, const AnalyzeConfig& config = {});

/// representatives.json, histograms.csv, clusters.json, mean_histograms.csv.
void write_analysis(const Analysis& analysis, const std::filesystem::path& dir);

}  // namespace lyrictrack::pipeline
