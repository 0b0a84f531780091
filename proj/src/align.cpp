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

#include "lyrictrack/align.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "json_util.hpp"
#include "lyrictrack/error.hpp"
#include "lyrictrack/text.hpp"
#include "parallel.hpp"

namespace lyrictrack::align {

int edit_distance_bounded(std::u32string_view a, std::u32string_view b, int limit) {
  if (a.size() < b.size()) std::swap(a, b);
  const int la = static_cast<int>(a.size());
  const int lb = static_cast<int>(b.size());
  if (limit < 0) return 0;
  if (la - lb > limit) return limit + 1;
  if (lb == 0) return la;

  // One row over the shorter string; a row whose minimum already exceeds the
  // limit can only grow.
  std::vector<int> row(static_cast<std::size_t>(lb) + 1);
  for (int j = 0; j <= lb; ++j) row[j] = j;
  for (int i = 1; i <= la; ++i) {
    int diag = row[0];
    row[0] = i;
    int row_min = row[0];
    for (int j = 1; j <= lb; ++j) {
      const int up = row[j];
      const int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
      row_min = std::min(row_min, row[j]);
    }
    if (row_min > limit) return limit + 1;
  }
  return row[lb] <= limit ? row[lb] : limit + 1;
}

int edit_distance_bounded(std::string_view a, std::string_view b, int limit) {
  return edit_distance_bounded(std::u32string_view(text::decode_utf8(a)),
                               std::u32string_view(text::decode_utf8(b)), limit);
}

int edit_distance(std::string_view a, std::string_view b) {
  return edit_distance_bounded(a, b, std::numeric_limits<int>::max() - 1);
}

FrameDistance frame_word_distance(const corpus::LyricWord& word, const corpus::FrameDetections& frame) {
  const std::u32string w = text::decode_utf8(word.text);
  if (frame.boxes.empty()) return {static_cast<int>(w.size()), std::nullopt};
  FrameDistance best{std::numeric_limits<int>::max(), std::nullopt};
  for (std::size_t i = 0; i < frame.boxes.size() && best.distance > 0; ++i) {
    const std::u32string b = text::decode_utf8(frame.boxes[i].text);
    const int d = edit_distance_bounded(w, b, best.distance - 1);
    if (d < best.distance) best = {d, i};
  }
  return best;
}

CostMatrix::CostMatrix(int words, int frames)
    : words_(words),
      frames_(frames),
      cost_(static_cast<std::size_t>(words) * static_cast<std::size_t>(frames), 0),
      box_(static_cast<std::size_t>(words) * static_cast<std::size_t>(frames), -1) {}

CostMatrix match_cost_matrix(const corpus::LyricSequence& lyrics,
                             std::span<const corpus::FrameDetections> frames, int threads) {
  const int K = static_cast<int>(lyrics.size());
  const int T = static_cast<int>(frames.size());
  for (int t = 0; t < T; ++t) {
    if (frames[t].t != t) {
      throw Error(ErrorCode::kInvalidArgument, "frames must be dense: frames[i].t == i");
    }
  }

  // Intern lyric texts and recognized texts so repeated strings share work.
  std::unordered_map<std::string, uint32_t> word_ids;
  std::vector<std::u32string> word_cps;
  std::vector<uint32_t> word_of(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    auto [it, fresh] = word_ids.try_emplace(lyrics[k].text, static_cast<uint32_t>(word_cps.size()));
    if (fresh) word_cps.push_back(text::decode_utf8(lyrics[k].text));
    word_of[k] = it->second;
  }
  std::unordered_map<std::string, uint32_t> text_ids;
  std::vector<std::u32string> text_cps;
  std::vector<std::vector<uint32_t>> frame_texts(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    for (const auto& box : frames[t].boxes) {
      auto [it, fresh] = text_ids.try_emplace(box.text, static_cast<uint32_t>(text_cps.size()));
      if (fresh) text_cps.push_back(text::decode_utf8(box.text));
      frame_texts[t].push_back(it->second);
    }
  }

  CostMatrix m(K, T);
  detail::parallel_chunks(static_cast<std::size_t>(T), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    // Only exact distances are cached; a banded miss is recomputed if needed.
    std::unordered_map<uint64_t, int> memo;
    for (std::size_t t = begin; t < end; ++t) {
      const auto& texts = frame_texts[t];
      for (int k = 0; k < K; ++k) {
        const uint32_t wid = word_of[k];
        if (texts.empty()) {
          m.set(k, static_cast<int>(t), static_cast<int>(word_cps[wid].size()), -1);
          continue;
        }
        int best = std::numeric_limits<int>::max();
        int best_box = -1;
        for (std::size_t b = 0; b < texts.size() && best > 0; ++b) {
          const uint64_t key = (static_cast<uint64_t>(wid) << 32) | texts[b];
          int d;
          if (auto it = memo.find(key); it != memo.end()) {
            d = it->second;
          } else {
            const int limit = best - 1;
            d = edit_distance_bounded(word_cps[wid], text_cps[texts[b]], limit);
            if (d <= limit) memo.emplace(key, d);
          }
          if (d < best) {
            best = d;
            best_box = static_cast<int>(b);
          }
        }
        m.set(k, static_cast<int>(t), best, best_box);
      }
    }
  });
  return m;
}

DpTables accumulate(const CostMatrix& costs, int delta, WindowMin window) {
  if (delta < 1) throw Error(ErrorCode::kInvalidArgument, "delta must be >= 1");
  const int K = costs.words();
  const int T = costs.frames();
  DpTables dp;
  dp.words = K;
  dp.frames = T;
  dp.g.assign(static_cast<std::size_t>(K) * T, kUnreachable);
  dp.pred.assign(static_cast<std::size_t>(K) * T, -1);
  if (K == 0 || T == 0) return dp;

  for (int t = 0; t < T; ++t) dp.g[t] = costs.cost(0, t);

  std::deque<int> window_idx;
  for (int k = 1; k < K; ++k) {
    const int64_t* prev = dp.g.data() + static_cast<std::size_t>(k - 1) * T;
    int64_t* cur = dp.g.data() + static_cast<std::size_t>(k) * T;
    int32_t* pred = dp.pred.data() + static_cast<std::size_t>(k) * T;
    window_idx.clear();
    for (int t = 0; t < T; ++t) {
      int best_t = -1;
      if (window == WindowMin::kMonotoneDeque) {
        if (t >= 1) {
          // Values stay non-decreasing front to back; equal values keep the
          // earlier frame in front.
          const int64_t v = prev[t - 1];
          while (!window_idx.empty() && prev[window_idx.back()] > v) window_idx.pop_back();
          window_idx.push_back(t - 1);
        }
        while (!window_idx.empty() && window_idx.front() < t - delta) window_idx.pop_front();
        if (!window_idx.empty()) best_t = window_idx.front();
      } else {
        int64_t best = kUnreachable;
        for (int tp = std::max(0, t - delta); tp < t; ++tp) {
          if (prev[tp] < best) {
            best = prev[tp];
            best_t = tp;
          }
        }
      }
      if (best_t >= 0 && prev[best_t] != kUnreachable) {
        cur[t] = prev[best_t] + costs.cost(k, t);
        pred[t] = best_t;
      }
    }
  }
  return dp;
}

MatchResult match_costs(const CostMatrix& costs, int delta, WindowMin window) {
  const int K = costs.words();
  const int T = costs.frames();
  if (delta < 1) throw Error(ErrorCode::kInvalidArgument, "delta must be >= 1");
  if (K < 1) throw Error(ErrorCode::kInvalidArgument, "at least one lyric word is required");
  if (T < K) {
    throw Error(ErrorCode::kInfeasiblePath, std::to_string(K) + " words cannot be anchored to " +
                                                std::to_string(T) + " frames");
  }
  const DpTables dp = accumulate(costs, delta, window);

  int last = -1;
  int64_t best = kUnreachable;
  for (int t = 0; t < T; ++t) {
    if (dp.at(K - 1, t) < best) {
      best = dp.at(K - 1, t);
      last = t;
    }
  }
  if (last < 0) {
    throw Error(ErrorCode::kInfeasiblePath, "no monotone path satisfies the frame gap bound delta=" +
                                                std::to_string(delta));
  }

  MatchResult result;
  result.total_cost = best;
  result.anchors.resize(static_cast<std::size_t>(K));
  int t = last;
  for (int k = K - 1; k >= 0; --k) {
    Anchor& a = result.anchors[k];
    a.k = k + 1;
    a.t = t;
    a.cost = costs.cost(k, t);
    t = dp.pred_at(k, t);
  }
  return result;
}

void attach_boxes(MatchResult& match, const corpus::LyricSequence& lyrics,
                  std::span<const corpus::FrameDetections> frames) {
  for (Anchor& a : match.anchors) {
    if (a.k < 1 || a.k > static_cast<int>(lyrics.size())) {
      throw SchemaError("anchor k=" + std::to_string(a.k) + " outside the lyrics");
    }
    if (a.t < 0 || a.t >= static_cast<int>(frames.size())) {
      throw SchemaError("anchor t=" + std::to_string(a.t) + " outside the video");
    }
    const auto& word = lyrics[static_cast<std::size_t>(a.k - 1)];
    const auto& frame = frames[static_cast<std::size_t>(a.t)];
    const FrameDistance fd = frame_word_distance(word, frame);
    a.word = word.text;
    a.cost = fd.distance;
    a.box = fd.box ? std::optional(frame.boxes[*fd.box]) : std::nullopt;
  }
}

MatchResult lyric_frame_match(const corpus::LyricSequence& lyrics,
                              std::span<const corpus::FrameDetections> frames, int delta, int threads) {
  const CostMatrix costs = match_cost_matrix(lyrics, frames, threads);
  MatchResult result = match_costs(costs, delta);
  for (Anchor& a : result.anchors) {
    a.word = lyrics[static_cast<std::size_t>(a.k - 1)].text;
    const int b = costs.box(a.k - 1, a.t);
    if (b >= 0) a.box = frames[static_cast<std::size_t>(a.t)].boxes[static_cast<std::size_t>(b)];
  }
  return result;
}

std::string serialize_anchors(const MatchResult& match, std::string_view video_id, int delta) {
  using detail::json;
  json anchors = json::array();
  for (const Anchor& a : match.anchors) {
    anchors.push_back({{"k", a.k}, {"word", a.word}, {"t", a.t}, {"cost", a.cost}});
  }
  json j = {{"video", std::string(video_id)},
            {"delta", delta},
            {"anchors", std::move(anchors)},
            {"total_cost", match.total_cost}};
  return j.dump(2) + "\n";
}

AnchorsFile parse_anchors(std::string_view json_text) {
  const detail::json j = detail::parse_json(json_text);
  AnchorsFile f;
  f.video = detail::require_string(j, "video");
  f.delta = static_cast<int>(detail::require_int(j, "delta"));
  f.match.total_cost = detail::require_int(j, "total_cost");
  long rec = 0;
  int prev_t = -1;
  for (const auto& a : detail::require_array(j, "anchors")) {
    ++rec;
    Anchor anchor;
    anchor.k = static_cast<int>(detail::require_int(a, "k", rec));
    anchor.word = detail::require_string(a, "word", rec);
    anchor.t = static_cast<int>(detail::require_int(a, "t", rec));
    anchor.cost = static_cast<int>(detail::require_int(a, "cost", rec));
    if (anchor.k != static_cast<int>(rec)) throw SchemaError("anchors must list k = 1, 2, ... in order", rec);
    if (anchor.t <= prev_t) throw SchemaError("anchor frames must strictly increase", rec);
    prev_t = anchor.t;
    f.match.anchors.push_back(std::move(anchor));
  }
  return f;
}

}  // namespace lyrictrack::align
