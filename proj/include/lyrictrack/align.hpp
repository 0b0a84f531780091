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

// Lyric-frame matching.
//
// Each lyric word k is assigned one frame t_k such that t_1 < t_2 < ... < t_K,
// consecutive anchors are at most `delta` frames apart, and the summed
// word-frame distance D(k, t_k) is minimal. D(k, t) is the smallest edit
// distance between word k and any text recognized in frame t.
//
// The accumulated cost obeys
//
//   g(1, t) = D(1, t)
//   g(k, t) = D(k, t) + min_{t - delta <= t' < t} g(k - 1, t')
//
// and the last anchor is argmin_t g(K, t). Both ends are free: the first word
// need not sit in frame 0 and the last need not sit in frame T - 1. Every
// argmin prefers the smallest frame index, which makes the result unique.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lyrictrack/corpus.hpp"

namespace lyrictrack::align {

/// Levenshtein distance over code points, unit costs.
int edit_distance(std::string_view a, std::string_view b);

/// Exact distance when it is <= limit, otherwise some value > limit. Rows
/// are abandoned as soon as their minimum exceeds `limit`.
int edit_distance_bounded(std::string_view a, std::string_view b, int limit);

int edit_distance_bounded(std::u32string_view a, std::u32string_view b, int limit);

struct FrameDistance {
  int distance = 0;
  std::optional<std::size_t> box;  // index into the frame's boxes
};

/// min over boxes of edit_distance(word, box.text); word length for an empty
/// frame. The first box wins ties.
FrameDistance frame_word_distance(const corpus::LyricWord& word, const corpus::FrameDetections& frame);

/// Row-major K x T table of D(k, t) with the minimizing box per cell.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int words, int frames);

  int words() const { return words_; }
  int frames() const { return frames_; }

  int cost(int k, int t) const { return cost_[index(k, t)]; }
  int box(int k, int t) const { return box_[index(k, t)]; }  // -1 when absent
  void set(int k, int t, int cost, int box = -1) {
    cost_[index(k, t)] = cost;
    box_[index(k, t)] = box;
  }

  /// D(k, ·) for 0-based word k.
  std::span<const int32_t> row(int k) const {
    return {cost_.data() + static_cast<std::size_t>(k) * frames_, static_cast<std::size_t>(frames_)};
  }

 private:
  std::size_t index(int k, int t) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(frames_) + static_cast<std::size_t>(t);
  }

  int words_ = 0;
  int frames_ = 0;
  std::vector<int32_t> cost_;
  std::vector<int32_t> box_;
};

/// Materializes D over dense frames (frames[i].t == i). Edit distances are
/// memoized per unique (lyric text, recognized text) pair; `threads` splits
/// the frame axis and does not affect the result.
CostMatrix match_cost_matrix(const corpus::LyricSequence& lyrics,
                             std::span<const corpus::FrameDetections> frames, int threads = 1);

enum class WindowMin {
  kMonotoneDeque,  // amortized O(1) per cell
  kNaiveScan,      // O(delta) per cell; reference implementation
};

inline constexpr int64_t kUnreachable = INT64_MAX;

/// Full DP tables: g(k, t) and the chosen predecessor frame (-1 for k = 0 or
/// unreachable cells).
struct DpTables {
  int words = 0;
  int frames = 0;
  std::vector<int64_t> g;
  std::vector<int32_t> pred;

  int64_t at(int k, int t) const { return g[static_cast<std::size_t>(k) * frames + t]; }
  int32_t pred_at(int k, int t) const { return pred[static_cast<std::size_t>(k) * frames + t]; }
};

DpTables accumulate(const CostMatrix& costs, int delta, WindowMin window = WindowMin::kMonotoneDeque);

struct Anchor {
  int k = 0;  // 1-based lyric index
  int t = 0;  // 0-based frame index
  int cost = 0;
  std::string word;
  std::optional<corpus::Detection> box;
};

struct MatchResult {
  std::vector<Anchor> anchors;
  int64_t total_cost = 0;
};

/// Optimal monotone assignment from a precomputed cost matrix. Anchors carry
/// k, t and cost only. Throws kInfeasiblePath / kInvalidArgument.
MatchResult match_costs(const CostMatrix& costs, int delta, WindowMin window = WindowMin::kMonotoneDeque);

/// End-to-end matching over dense frames; anchors carry the lyric word and
/// the minimizing detection.
MatchResult lyric_frame_match(const corpus::LyricSequence& lyrics,
                              std::span<const corpus::FrameDetections> frames, int delta = 1000,
                              int threads = 1);

/// Fills word text and boxes of anchors read back from anchors.json.
void attach_boxes(MatchResult& match, const corpus::LyricSequence& lyrics,
                  std::span<const corpus::FrameDetections> frames);

std::string serialize_anchors(const MatchResult& match, std::string_view video_id, int delta);

struct AnchorsFile {
  std::string video;
  int delta = 0;
  MatchResult match;
};

AnchorsFile parse_anchors(std::string_view json_text);

}  // namespace lyrictrack::align
