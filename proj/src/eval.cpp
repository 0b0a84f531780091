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

#include "lyrictrack/eval.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "json_util.hpp"
#include "lyrictrack/error.hpp"

namespace lyrictrack::eval {

namespace {

bool canonical_less(const LabeledBox& a, const LabeledBox& b) {
  if (a.text != b.text) return a.text < b.text;
  for (std::size_t i = 0; i < 4; ++i) {
    if (a.quad[i].x != b.quad[i].x) return a.quad[i].x < b.quad[i].x;
    if (a.quad[i].y != b.quad[i].y) return a.quad[i].y < b.quad[i].y;
  }
  return false;
}

std::vector<LabeledBox> canonical(std::span<const LabeledBox> boxes) {
  std::vector<LabeledBox> out(boxes.begin(), boxes.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

struct Pair {
  double iou;
  std::size_t gt;
  std::size_t pred;
};

}  // namespace

Counts match_frame(std::span<const LabeledBox> pred_in, std::span<const LabeledBox> gt_in, double iou_threshold) {
  // Sorting both sides first makes tie-breaking independent of input order.
  const std::vector<LabeledBox> pred = canonical(pred_in);
  const std::vector<LabeledBox> gt = canonical(gt_in);

  std::vector<Pair> pairs;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t p = 0; p < pred.size(); ++p) {
      if (pred[p].text != gt[g].text) continue;
      const double v = geometry::iou(pred[p].quad, gt[g].quad);
      if (v > iou_threshold) pairs.push_back({v, g, p});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(b.iou, a.gt, a.pred) < std::tie(a.iou, b.gt, b.pred);
  });

  std::vector<bool> gt_used(gt.size(), false);
  std::vector<bool> pred_used(pred.size(), false);
  Counts c;
  for (const Pair& pr : pairs) {
    if (gt_used[pr.gt] || pred_used[pr.pred]) continue;
    gt_used[pr.gt] = true;
    pred_used[pr.pred] = true;
    ++c.tp;
  }
  c.fp = static_cast<int64_t>(pred.size()) - c.tp;
  c.fn = static_cast<int64_t>(gt.size()) - c.tp;
  return c;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

EvalReport metrics(int64_t tp, int64_t fp, int64_t fn) {
  if (tp < 0 || fp < 0 || fn < 0) throw Error(ErrorCode::kInvalidArgument, "counts must be non-negative");
  EvalReport r;
  r.counts = {tp, fp, fn};
  const double p = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  const double rc = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.precision_undefined = (tp + fp) == 0;
  r.recall_undefined = (tp + fn) == 0;
  r.precision = 100.0 * p;
  r.recall = 100.0 * rc;
  r.f_measure = (p + rc) > 0.0 ? 2.0 * p * rc / (p + rc) : 0.0;
  return r;
}

std::string_view mode_name(EvalMode mode) {
  switch (mode) {
    case EvalMode::kMatching: return "MA";
    case EvalMode::kMatchingTracking: return "MA+TR";
    case EvalMode::kFull: return "MA+TR+IN";
  }
  return "MA+TR+IN";
}

std::optional<EvalMode> parse_mode(std::string_view name) {
  if (name == "MA") return EvalMode::kMatching;
  if (name == "MA+TR") return EvalMode::kMatchingTracking;
  if (name == "MA+TR+IN") return EvalMode::kFull;
  return std::nullopt;
}

namespace {

bool included(const track::Trajectory& tr, const track::TrackedFrame& f, EvalMode mode) {
  switch (mode) {
    case EvalMode::kMatching: return f.t == tr.anchor_t;
    case EvalMode::kMatchingTracking: return f.source != track::FrameSource::kInterpolated;
    case EvalMode::kFull: return true;
  }
  return true;
}

}  // namespace

EvalReport evaluate_video(std::span<const track::Trajectory> trajs, const corpus::GroundTruth& gt, EvalMode mode,
                          std::optional<int> frame_count) {
  if (gt.frames.empty()) throw Error(ErrorCode::kMissingGroundTruth, "ground truth has no annotated frames");
  Counts total;
  std::vector<FrameCounts> per_frame;
  per_frame.reserve(gt.frames.size());
  for (const corpus::GtFrame& frame : gt.frames) {
    if (frame_count && (frame.t < 0 || frame.t >= *frame_count)) {
      throw SchemaError("annotated frame " + std::to_string(frame.t) + " outside the video");
    }
    std::vector<LabeledBox> pred;
    for (const track::Trajectory& tr : trajs) {
      const track::TrackedFrame* f = tr.find(frame.t);
      if (f && included(tr, *f, mode)) pred.push_back({f->quad, tr.word});
    }
    const Counts c = match_frame(pred, frame.boxes);
    per_frame.push_back({frame.t, c});
    total += c;
  }
  EvalReport r = metrics(total.tp, total.fp, total.fn);
  r.per_frame = std::move(per_frame);
  return r;
}

std::string serialize_metrics(const EvalReport& report, EvalMode mode) {
  detail::json j = {{"tp", report.counts.tp},
                    {"fp", report.counts.fp},
                    {"fn", report.counts.fn},
                    {"precision", round_to(report.precision, 2)},
                    {"recall", round_to(report.recall, 2)},
                    {"f", round_to(report.f_measure, 4)},
                    {"mode", std::string(mode_name(mode))}};
  if (report.precision_undefined || report.recall_undefined) {
    detail::json warnings = detail::json::array();
    if (report.precision_undefined) warnings.push_back("precision_undefined");
    if (report.recall_undefined) warnings.push_back("recall_undefined");
    j["warnings"] = std::move(warnings);
  }
  return j.dump(2) + "\n";
}

}  // namespace lyrictrack::eval
