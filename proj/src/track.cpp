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

#include "lyrictrack/track.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json_util.hpp"
#include "lyrictrack/error.hpp"
#include "lyrictrack/text.hpp"
#include "parallel.hpp"

namespace lyrictrack::track {

std::string_view source_tag(FrameSource s) {
  switch (s) {
    case FrameSource::kDetected: return "det";
    case FrameSource::kSearched: return "search";
    case FrameSource::kInterpolated: return "interp";
  }
  return "det";
}

const TrackedFrame* Trajectory::find(int t) const {
  auto it = std::lower_bound(frames.begin(), frames.end(), t,
                             [](const TrackedFrame& f, int v) { return f.t < v; });
  return (it != frames.end() && it->t == t) ? &*it : nullptr;
}

void TrackParams::validate() const {
  if (!(word_sim >= 0.0 && word_sim <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "word_sim must lie in [0, 1]");
  if (!(max_move > 0.0)) throw Error(ErrorCode::kInvalidArgument, "max_move must be positive");
  if (!(min_scale > 0.0 && min_scale <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "min_scale must lie in (0, 1]");
  }
  if (max_miss < 1) throw Error(ErrorCode::kInvalidArgument, "max_miss must be >= 1");
}

double normalized_edit_distance(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(text::codepoint_length(a), text::codepoint_length(b));
  if (longest == 0) return 0.0;
  return static_cast<double>(align::edit_distance(a, b)) / static_cast<double>(longest);
}

namespace {

struct Candidate {
  std::size_t box = 0;
  int edits = 0;
  double shift = 0.0;
};

void scan(Trajectory& traj, std::span<const corpus::FrameDetections> frames, double diagonal,
          const TrackParams& params, const Quad& anchor_quad, int dir) {
  const int T = static_cast<int>(frames.size());
  int last_t = traj.anchor_t;
  Quad last_quad = anchor_quad;
  int misses = 0;
  for (int t = traj.anchor_t + dir; t >= 0 && t < T && misses < params.max_miss; t += dir) {
    const geometry::Point last_center = geometry::centroid(last_quad);
    const double last_area = geometry::area(last_quad);
    const double max_shift = params.max_move * diagonal * std::abs(t - last_t);
    std::optional<Candidate> best;
    const auto& boxes = frames[static_cast<std::size_t>(t)].boxes;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const auto& box = boxes[i];
      if (normalized_edit_distance(traj.word, box.text) > params.word_sim) continue;
      const double shift = geometry::distance(geometry::centroid(box.quad), last_center);
      if (shift > max_shift) continue;
      const double ratio = geometry::area(box.quad) / last_area;
      if (ratio < params.min_scale || ratio > 1.0 / params.min_scale) continue;
      const Candidate c{i, align::edit_distance(traj.word, box.text), shift};
      if (!best || c.edits < best->edits || (c.edits == best->edits && c.shift < best->shift)) best = c;
    }
    if (!best) {
      ++misses;
      continue;
    }
    misses = 0;
    last_t = t;
    last_quad = boxes[best->box].quad;
    traj.frames.push_back({t, last_quad, FrameSource::kSearched});
  }
}

}  // namespace

Trajectory extend_track(const align::Anchor& anchor, std::span<const corpus::FrameDetections> frames,
                        double frame_diagonal, const TrackParams& params) {
  params.validate();
  if (!anchor.box) throw Error(ErrorCode::kInvalidArgument, "anchor has no detection to track");
  if (anchor.t < 0 || anchor.t >= static_cast<int>(frames.size())) {
    throw Error(ErrorCode::kInvalidArgument, "anchor frame outside the video");
  }
  Trajectory traj;
  traj.k = anchor.k;
  traj.word = anchor.word;
  traj.anchor_t = anchor.t;
  traj.frames.push_back({anchor.t, anchor.box->quad, FrameSource::kDetected});
  scan(traj, frames, frame_diagonal, params, anchor.box->quad, -1);
  scan(traj, frames, frame_diagonal, params, anchor.box->quad, +1);
  std::sort(traj.frames.begin(), traj.frames.end(),
            [](const TrackedFrame& a, const TrackedFrame& b) { return a.t < b.t; });
  return traj;
}

Trajectory interpolate_gaps(const Trajectory& traj) {
  std::vector<const TrackedFrame*> observed;
  for (const TrackedFrame& f : traj.frames) {
    if (f.source != FrameSource::kInterpolated) observed.push_back(&f);
  }
  if (observed.size() <= 1) return traj;

  const int first = observed.front()->t;
  const int last = observed.back()->t;
  std::vector<int> missing;
  for (std::size_t i = 1; i < observed.size(); ++i) {
    for (int t = observed[i - 1]->t + 1; t < observed[i]->t; ++t) missing.push_back(t);
  }
  Trajectory out = traj;
  out.frames.clear();
  for (const TrackedFrame* f : observed) out.frames.push_back(*f);
  if (missing.empty()) return out;

  // Parameter table: cx, cy, width, height, unwrapped angle.
  const auto n = static_cast<Eigen::Index>(observed.size());
  Eigen::MatrixXd values(n, 5);
  double prev_angle = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const geometry::QuadParams p = geometry::quad_params(observed[static_cast<std::size_t>(i)]->quad);
    double angle = p.angle;
    if (i > 0) {
      angle = prev_angle + std::remainder(angle - prev_angle, 2.0 * std::numbers::pi);
    }
    prev_angle = angle;
    values.row(i) << p.center.x, p.center.y, p.width, p.height, angle;
  }

  // Centered, scaled time keeps the Vandermonde system well conditioned.
  const int degree = static_cast<int>(std::min<Eigen::Index>(2, n - 1));
  const double mid = 0.5 * (first + last);
  const double half_span = std::max(1.0, 0.5 * (last - first));
  auto basis = [&](int t, Eigen::Index cols) {
    Eigen::RowVectorXd row(cols);
    const double x = (t - mid) / half_span;
    double p = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c, p *= x) row(c) = p;
    return row;
  };
  Eigen::MatrixXd design(n, degree + 1);
  for (Eigen::Index i = 0; i < n; ++i) design.row(i) = basis(observed[static_cast<std::size_t>(i)]->t, degree + 1);
  const Eigen::MatrixXd coeffs = design.colPivHouseholderQr().solve(values);

  constexpr double kMinExtent = 1e-3;
  for (int t : missing) {
    const Eigen::RowVectorXd p = basis(t, degree + 1) * coeffs;
    out.frames.push_back({t,
                          geometry::rotated_rect({p(0), p(1)}, std::max(p(2), kMinExtent),
                                                 std::max(p(3), kMinExtent), p(4)),
                          FrameSource::kInterpolated});
  }
  std::sort(out.frames.begin(), out.frames.end(),
            [](const TrackedFrame& a, const TrackedFrame& b) { return a.t < b.t; });
  return out;
}

std::vector<Trajectory> track_all(const align::MatchResult& match, const corpus::Video& video,
                                  const TrackParams& params, int threads) {
  params.validate();
  const auto& anchors = match.anchors;
  std::vector<std::optional<Trajectory>> slots(anchors.size());
  const double diagonal = video.meta.diagonal();
  detail::parallel_chunks(anchors.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      if (!anchors[i].box) continue;
      slots[i] = interpolate_gaps(extend_track(anchors[i], video.frames, diagonal, params));
    }
  });
  std::vector<Trajectory> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

void serialize_trajectories(std::ostream& out, const std::vector<Trajectory>& trajs) {
  using detail::json;
  for (const Trajectory& tr : trajs) {
    json frames = json::array();
    for (const TrackedFrame& f : tr.frames) {
      frames.push_back({{"t", f.t}, {"poly", detail::quad_to_json(f.quad)}, {"src", source_tag(f.source)}});
    }
    json rec = {{"k", tr.k}, {"word", tr.word}, {"anchor_t", tr.anchor_t}, {"frames", std::move(frames)}};
    out << rec.dump() << '\n';
  }
}

std::vector<Trajectory> parse_trajectories(std::istream& in) {
  std::vector<Trajectory> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const detail::json rec = detail::parse_json(line, line_no);
    Trajectory tr;
    tr.k = static_cast<int>(detail::require_int(rec, "k", line_no));
    tr.word = text::normalize_word(detail::require_string(rec, "word", line_no));
    tr.anchor_t = static_cast<int>(detail::require_int(rec, "anchor_t", line_no));
    for (const auto& f : detail::require_array(rec, "frames", line_no)) {
      TrackedFrame tf;
      tf.t = static_cast<int>(detail::require_int(f, "t", line_no));
      tf.quad = detail::quad_from_json(detail::require(f, "poly", line_no), line_no);
      const std::string src = detail::require_string(f, "src", line_no);
      if (src == "det") {
        tf.source = FrameSource::kDetected;
      } else if (src == "search") {
        tf.source = FrameSource::kSearched;
      } else if (src == "interp") {
        tf.source = FrameSource::kInterpolated;
      } else {
        throw SchemaError("'src' must be det, search or interp", line_no);
      }
      if (!tr.frames.empty() && tf.t <= tr.frames.back().t) {
        throw SchemaError("trajectory frames must strictly increase", line_no);
      }
      tr.frames.push_back(tf);
    }
    if (!tr.find(tr.anchor_t)) throw SchemaError("anchor frame missing from trajectory", line_no);
    out.push_back(std::move(tr));
  }
  return out;
}

void save_trajectories(const std::filesystem::path& path, const std::vector<Trajectory>& trajs) {
  std::ostringstream out;
  serialize_trajectories(out, trajs);
  corpus::write_file(path, out.str());
}

std::vector<Trajectory> load_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return parse_trajectories(in);
}

}  // namespace lyrictrack::track
