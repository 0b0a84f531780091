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

#include "lyrictrack/pipeline.hpp"

#include "json_util.hpp"
#include "lyrictrack/error.hpp"

namespace lyrictrack::pipeline {

LoadedVideo load_video(const std::filesystem::path& detections, const std::filesystem::path& meta,
                       const std::filesystem::path& lyrics, std::optional<double> dedup_overlap) {
  LoadedVideo out;
  const corpus::VideoMeta m = corpus::load_meta(meta);
  std::vector<corpus::FrameDetections> frames = corpus::load_detections(detections);
  if (dedup_overlap) {
    for (auto& f : frames) f = corpus::dedup_detections(f, *dedup_overlap);
  }
  out.video = corpus::make_video(m, frames);
  if (!lyrics.empty()) out.lyrics = corpus::load_lyrics(lyrics);
  return out;
}

std::vector<track::Trajectory> anchor_trajectories(const align::MatchResult& match) {
  std::vector<track::Trajectory> out;
  for (const align::Anchor& a : match.anchors) {
    if (!a.box) continue;
    track::Trajectory tr;
    tr.k = a.k;
    tr.word = a.word;
    tr.anchor_t = a.t;
    tr.frames.push_back({a.t, a.box->quad, track::FrameSource::kDetected});
    out.push_back(std::move(tr));
  }
  return out;
}

void validate(const AnalyzeConfig& config) {
  motion::validate_buckets(config.motion.buckets);
  if (config.motion.k_per_bucket < 1) throw Error(ErrorCode::kInvalidK, "k per bucket must be >= 1");
  if (config.k_min < 2 || config.k_max < config.k_min) {
    throw Error(ErrorCode::kInvalidK, "k-means range must satisfy 2 <= k_min <= k_max");
  }
  if (config.restarts < 1) throw Error(ErrorCode::kInvalidArgument, "restarts must be >= 1");
  if (config.motion.threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
}

Analysis analyze(std::span<const VideoTracks> videos, const AnalyzeConfig& config) {
  validate(config);
  Analysis a;
  std::vector<motion::MotionCurve> curves;
  for (const VideoTracks& v : videos) {
    for (const track::Trajectory& tr : v.trajectories) {
      if (!tr.frames.empty()) curves.push_back(motion::to_motion_curve(tr, v.meta));
    }
  }
  a.model = motion::build_representatives(curves, config.motion);
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    a.histograms.push_back(motion::motion_histogram(videos[i].trajectories, a.model, videos[i].meta));
    if (!a.histograms.back().empty) {
      a.clustered.push_back(i);
      data.push_back(a.histograms.back().bins);
    }
  }
  a.clustering = motion::cluster_videos(data, config.k_min, config.k_max, config.motion.seed, config.restarts);
  a.means = motion::mean_histograms(a.clustering.assignment, data, a.clustering.chosen_k);
  a.sizes.assign(static_cast<std::size_t>(a.clustering.chosen_k), 0);
  for (int c : a.clustering.assignment) ++a.sizes[static_cast<std::size_t>(c)];
  return a;
}

void write_analysis(const Analysis& a, const std::filesystem::path& dir) {
  corpus::write_file(dir / "representatives.json", motion::serialize_representatives(a.model));
  corpus::write_file(dir / "histograms.csv", motion::histograms_csv(a.histograms, a.model.bins()));
  std::vector<motion::MotionHistogram> clustered;
  for (std::size_t i : a.clustered) clustered.push_back(a.histograms[i]);
  detail::json clusters = detail::json::parse(motion::clusters_json(a.clustering, clustered));
  detail::json excluded = detail::json::array();
  for (const auto& h : a.histograms) {
    if (h.empty) excluded.push_back(h.video_id);
  }
  clusters["empty_videos"] = std::move(excluded);
  corpus::write_file(dir / "clusters.json", clusters.dump(2) + "\n");
  corpus::write_file(dir / "mean_histograms.csv", motion::mean_histograms_csv(a.means, a.sizes));
}

}  // namespace lyrictrack::pipeline
