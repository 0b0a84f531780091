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

#include "lyrictrack/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json_util.hpp"
#include "lyrictrack/error.hpp"
#include "lyrictrack/text.hpp"

namespace lyrictrack::corpus {

using detail::json;

double VideoMeta::diagonal() const {
  return std::hypot(static_cast<double>(width), static_cast<double>(height));
}

LyricSequence tokenize_lyrics(std::string_view raw_text) {
  LyricSequence seq;
  std::istringstream in{std::string(raw_text)};
  std::string token;
  while (in >> token) {
    std::string norm = text::normalize_word(token);
    if (norm.empty()) continue;
    LyricWord w;
    w.index = static_cast<int>(seq.words.size()) + 1;
    w.text = std::move(norm);
    w.raw = token;
    seq.words.push_back(std::move(w));
  }
  if (seq.words.empty()) throw Error(ErrorCode::kEmptyLyrics, "lyrics contain no words");
  return seq;
}

namespace {

Detection detection_from_json(const json& box, long line) {
  Detection d;
  d.quad = detail::quad_from_json(detail::require(box, "poly", line), line);
  d.text = text::normalize_word(detail::require_string(box, "text", line));
  d.confidence = detail::require_number(box, "conf", line);
  if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
    throw SchemaError("'conf' must lie in [0, 1]", line);
  }
  d.detector = detail::require_string(box, "det", line);
  return d;
}

}  // namespace

std::vector<FrameDetections> parse_detections(std::istream& in) {
  std::vector<FrameDetections> frames;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    const json rec = detail::parse_json(line, line_no);
    FrameDetections f;
    const long long t = detail::require_int(rec, "t", line_no);
    if (t < 0 || t > std::numeric_limits<int>::max()) throw SchemaError("'t' out of range", line_no);
    f.t = static_cast<int>(t);
    for (const json& box : detail::require_array(rec, "boxes", line_no)) {
      f.boxes.push_back(detection_from_json(box, line_no));
    }
    if (!frames.empty() && f.t <= frames.back().t) {
      throw Error(ErrorCode::kNonMonotoneFrames,
                  "line " + std::to_string(line_no) + ": frame " + std::to_string(f.t) +
                      " does not follow frame " + std::to_string(frames.back().t));
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

void serialize_detections(std::ostream& out, const std::vector<FrameDetections>& frames) {
  for (const FrameDetections& f : frames) {
    json boxes = json::array();
    for (const Detection& d : f.boxes) {
      boxes.push_back({{"poly", detail::quad_to_json(d.quad)},
                       {"text", d.text},
                       {"conf", d.confidence},
                       {"det", d.detector}});
    }
    json rec = {{"t", f.t}, {"boxes", std::move(boxes)}};
    out << rec.dump() << '\n';
  }
}

VideoMeta parse_meta(std::string_view json_text) {
  const json j = detail::parse_json(json_text);
  VideoMeta m;
  m.id = detail::require_string(j, "id");
  m.fps = detail::require_number(j, "fps");
  m.width = static_cast<int>(detail::require_int(j, "width"));
  m.height = static_cast<int>(detail::require_int(j, "height"));
  m.frames = static_cast<int>(detail::require_int(j, "frames"));
  if (!(m.fps > 0.0)) throw SchemaError("'fps' must be positive");
  if (m.width <= 0 || m.height <= 0) throw SchemaError("'width' and 'height' must be positive");
  if (m.frames < 1) throw SchemaError("'frames' must be at least 1");
  return m;
}

std::string serialize_meta(const VideoMeta& m) {
  json j = {{"id", m.id}, {"fps", m.fps}, {"width", m.width}, {"height", m.height}, {"frames", m.frames}};
  return j.dump(2) + "\n";
}

GroundTruth parse_ground_truth(std::string_view json_text) {
  const json j = detail::parse_json(json_text);
  GroundTruth gt;
  long rec = 0;
  for (const json& fr : detail::require_array(j, "frames")) {
    ++rec;
    GtFrame f;
    const long long t = detail::require_int(fr, "t", rec);
    if (t < 0) throw SchemaError("'t' must be non-negative", rec);
    f.t = static_cast<int>(t);
    for (const json& box : detail::require_array(fr, "boxes", rec)) {
      GtBox b;
      b.quad = detail::quad_from_json(detail::require(box, "poly", rec), rec);
      b.text = text::normalize_word(detail::require_string(box, "text", rec));
      f.boxes.push_back(std::move(b));
    }
    gt.frames.push_back(std::move(f));
  }
  std::sort(gt.frames.begin(), gt.frames.end(), [](const GtFrame& a, const GtFrame& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < gt.frames.size(); ++i) {
    if (gt.frames[i].t == gt.frames[i - 1].t) {
      throw SchemaError("duplicate ground-truth frame " + std::to_string(gt.frames[i].t));
    }
  }
  return gt;
}

std::string serialize_ground_truth(const GroundTruth& gt) {
  json frames = json::array();
  for (const GtFrame& f : gt.frames) {
    json boxes = json::array();
    for (const GtBox& b : f.boxes) boxes.push_back({{"poly", detail::quad_to_json(b.quad)}, {"text", b.text}});
    frames.push_back({{"t", f.t}, {"boxes", std::move(boxes)}});
  }
  return json{{"frames", std::move(frames)}}.dump() + "\n";
}

Video make_video(const VideoMeta& meta, const std::vector<FrameDetections>& sparse) {
  Video v;
  v.meta = meta;
  v.frames.resize(static_cast<std::size_t>(meta.frames));
  for (int t = 0; t < meta.frames; ++t) v.frames[static_cast<std::size_t>(t)].t = t;
  for (const FrameDetections& f : sparse) {
    if (f.t < 0 || f.t >= meta.frames) {
      throw SchemaError("frame " + std::to_string(f.t) + " outside video of " +
                        std::to_string(meta.frames) + " frames");
    }
    v.frames[static_cast<std::size_t>(f.t)].boxes = f.boxes;
  }
  return v;
}

FrameDetections dedup_detections(const FrameDetections& frame, double overlap_threshold) {
  if (!(overlap_threshold > 0.0 && overlap_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap threshold must lie in (0, 1]");
  }
  const std::size_t n = frame.boxes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return frame.boxes[a].confidence > frame.boxes[b].confidence;
  });

  std::vector<bool> keep(n, false);
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    const Detection& cand = frame.boxes[i];
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](std::size_t j) {
      const Detection& other = frame.boxes[j];
      return other.detector != cand.detector && other.text == cand.text &&
             geometry::iou(other.quad, cand.quad) >= overlap_threshold;
    });
    if (!duplicate) {
      keep[i] = true;
      kept.push_back(i);
    }
  }

  FrameDetections out;
  out.t = frame.t;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) out.boxes.push_back(frame.boxes[i]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<FrameDetections> load_detections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return parse_detections(in);
}

void save_detections(const std::filesystem::path& path, const std::vector<FrameDetections>& frames) {
  std::ostringstream out;
  serialize_detections(out, frames);
  write_file(path, out.str());
}

VideoMeta load_meta(const std::filesystem::path& path) { return parse_meta(read_file(path)); }

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth(read_file(path));
}

LyricSequence load_lyrics(const std::filesystem::path& path) { return tokenize_lyrics(read_file(path)); }

}  // namespace lyrictrack::corpus
