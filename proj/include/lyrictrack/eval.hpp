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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyrictrack/corpus.hpp"
#include "lyrictrack/track.hpp"

namespace lyrictrack::eval {

using LabeledBox = corpus::GtBox;

inline constexpr double kHitIou = 0.5;

struct Counts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

/// A prediction hits a ground-truth box of the same text when IoU > 0.5.
/// Pairs are claimed greedily by descending IoU, so each GT box takes at
/// most one prediction and competing predictions become false positives.
/// The result does not depend on input order.
Counts match_frame(std::span<const LabeledBox> pred, std::span<const LabeledBox> gt,
                   double iou_threshold = kHitIou);

struct FrameCounts {
  int t = 0;
  Counts counts;
};

struct EvalReport {
  Counts counts;
  double precision = 0.0;  // percent, unrounded
  double recall = 0.0;     // percent, unrounded
  double f_measure = 0.0;  // in [0, 1], unrounded
  bool precision_undefined = false;  // TP + FP == 0
  bool recall_undefined = false;     // TP + FN == 0
  std::vector<FrameCounts> per_frame;
};

EvalReport metrics(int64_t tp, int64_t fp, int64_t fn);

/// Round half away from zero to `decimals` places.
double round_to(double value, int decimals);

enum class EvalMode {
  kMatching,          // MA: anchor frames only
  kMatchingTracking,  // MA+TR: detected and searched frames
  kFull,              // MA+TR+IN: every trajectory frame
};

std::string_view mode_name(EvalMode mode);
std::optional<EvalMode> parse_mode(std::string_view name);

/// Scores trajectories on every annotated frame. When frame_count is given,
/// annotated frames outside [0, frame_count) are a schema error. Throws
/// kMissingGroundTruth when no frame is annotated.
EvalReport evaluate_video(std::span<const track::Trajectory> trajs, const corpus::GroundTruth& gt,
                          EvalMode mode = EvalMode::kFull, std::optional<int> frame_count = std::nullopt);

/// metrics.json: tp/fp/fn, precision and recall at 2 decimals, f at 4, plus
/// a "warnings" list when a denominator was zero.
std::string serialize_metrics(const EvalReport& report, EvalMode mode);

}  // namespace lyrictrack::eval
