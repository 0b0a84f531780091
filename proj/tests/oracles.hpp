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

// Slow, obviously-correct reference implementations used by the tests. None
// of these share code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lyrictrack/align.hpp"
#include "lyrictrack/geometry.hpp"
#include "lyrictrack/motion.hpp"

namespace lyrictrack::testing {

using geometry::Point;
using geometry::Quad;

// ---- edit distance ----

/// Plain three-way recursion over suffixes, no memo.
inline int brute_edit_distance(const std::u32string& a, std::size_t i, const std::u32string& b, std::size_t j) {
  if (i == a.size()) return static_cast<int>(b.size() - j);
  if (j == b.size()) return static_cast<int>(a.size() - i);
  const int sub = brute_edit_distance(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  const int del = brute_edit_distance(a, i + 1, b, j) + 1;
  const int ins = brute_edit_distance(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

inline int brute_edit_distance(const std::string& a, const std::string& b) {
  return brute_edit_distance(std::u32string(a.begin(), a.end()), 0, std::u32string(b.begin(), b.end()), 0);
}

inline std::string random_string(std::mt19937_64& rng, std::size_t max_len, std::string_view alphabet) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
  }
  return s;
}

// ---- lyric-frame DP ----

struct BrutePath {
  int64_t cost = std::numeric_limits<int64_t>::max();
  std::vector<int> t;  // one frame per word
  bool feasible = false;
};

/// Every strictly increasing t_1 < ... < t_K with t_k - t_{k-1} <= delta.
/// Among optimal paths keeps the one that is smallest when compared from the
/// last word backwards.
inline BrutePath brute_match(const std::vector<std::vector<int>>& d, int delta) {
  const int K = static_cast<int>(d.size());
  const int T = K ? static_cast<int>(d[0].size()) : 0;
  BrutePath best;
  std::vector<int> cur;
  auto reversed_less = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  };
  std::function<void(int, int64_t)> rec = [&](int k, int64_t cost) {
    if (k == K) {
      if (!best.feasible || cost < best.cost || (cost == best.cost && reversed_less(cur, best.t))) {
        best.cost = cost;
        best.t = cur;
        best.feasible = true;
      }
      return;
    }
    const int lo = k == 0 ? 0 : cur.back() + 1;
    const int hi = k == 0 ? T - 1 : std::min(T - 1, cur.back() + delta);
    for (int t = lo; t <= hi; ++t) {
      cur.push_back(t);
      rec(k + 1, cost + d[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)]);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return best;
}

inline align::CostMatrix to_cost_matrix(const std::vector<std::vector<int>>& d) {
  const int K = static_cast<int>(d.size());
  const int T = K ? static_cast<int>(d[0].size()) : 0;
  align::CostMatrix m(K, T);
  for (int k = 0; k < K; ++k) {
    for (int t = 0; t < T; ++t) m.set(k, t, d[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)]);
  }
  return m;
}

inline std::vector<std::vector<int>> random_costs(std::mt19937_64& rng, int K, int T, int max_cost) {
  std::uniform_int_distribution<int> cost(0, max_cost);
  std::vector<std::vector<int>> d(static_cast<std::size_t>(K), std::vector<int>(static_cast<std::size_t>(T)));
  for (auto& row : d) {
    for (int& v : row) v = cost(rng);
  }
  return d;
}

// ---- geometry ----

inline bool inside_convex(const Quad& q, Point p) {
  // CCW: every edge has p on its left (or on it).
  for (std::size_t i = 0; i < 4; ++i) {
    const Point a = q[i];
    const Point b = q[(i + 1) % 4];
    if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0.0) return false;
  }
  return true;
}

inline double shoelace(const Quad& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += q[i].x * q[(i + 1) % 4].y - q[(i + 1) % 4].x * q[i].y;
  return 0.5 * s;
}

/// IoU estimated from `samples` uniform points over the joint bounding box.
inline double monte_carlo_iou(const Quad& a, const Quad& b, int samples, std::mt19937_64& rng) {
  double x0 = a[0].x, x1 = a[0].x, y0 = a[0].y, y1 = a[0].y;
  for (const Quad* q : {&a, &b}) {
    for (const Point& p : *q) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  long in_a = 0, in_b = 0, in_both = 0;
  for (int i = 0; i < samples; ++i) {
    const Point p{ux(rng), uy(rng)};
    const bool pa = inside_convex(a, p);
    const bool pb = inside_convex(b, p);
    in_a += pa;
    in_b += pb;
    in_both += pa && pb;
  }
  const long uni = in_a + in_b - in_both;
  return uni ? static_cast<double>(in_both) / static_cast<double>(uni) : 0.0;
}

/// Four points at sorted random angles on a random ellipse: convex, CCW.
inline Quad random_convex_quad(std::mt19937_64& rng, Point center, double max_radius) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> rad(0.3 * max_radius, max_radius);
  for (;;) {
    std::array<double, 4> th{ang(rng), ang(rng), ang(rng), ang(rng)};
    std::sort(th.begin(), th.end());
    const double rx = rad(rng);
    const double ry = rad(rng);
    const double rot = ang(rng);
    Quad q;
    for (std::size_t i = 0; i < 4; ++i) {
      const double ex = rx * std::cos(th[i]);
      const double ey = ry * std::sin(th[i]);
      q[i] = {center.x + ex * std::cos(rot) - ey * std::sin(rot), center.y + ex * std::sin(rot) + ey * std::cos(rot)};
    }
    if (shoelace(q) > 0.05 * max_radius * max_radius) return q;
  }
}

// ---- DTW ----

/// Sum of Euclidean costs along every monotone warping path; the minimum.
inline double brute_dtw(const std::vector<Point>& a, const std::vector<Point>& b) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    acc += std::hypot(a[i].x - b[j].x, a[i].y - b[j].y);
    if (i + 1 == a.size() && j + 1 == b.size()) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < a.size()) walk(i + 1, j, acc);
    if (j + 1 < b.size()) walk(i, j + 1, acc);
    if (i + 1 < a.size() && j + 1 < b.size()) walk(i + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

inline motion::MotionCurve random_curve(std::mt19937_64& rng, std::size_t len) {
  std::normal_distribution<double> step(0.0, 0.02);
  motion::MotionCurve c;
  Point p{0.0, 0.0};
  for (std::size_t i = 0; i < len; ++i) {
    c.points.push_back(p);
    p = p + Point{step(rng), step(rng)};
  }
  return c;
}

// ---- clustering ----

/// CH from total and within sums of squares, B = T - W.
inline double direct_ch(const std::vector<std::vector<double>>& x, const std::vector<int>& label, int k) {
  const std::size_t n = x.size();
  const std::size_t d = x[0].size();
  std::vector<double> mean(d, 0.0);
  for (const auto& r : x) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += r[j] / static_cast<double>(n);
  }
  double total = 0.0;
  for (const auto& r : x) {
    for (std::size_t j = 0; j < d; ++j) total += (r[j] - mean[j]) * (r[j] - mean[j]);
  }
  double within = 0.0;
  for (int c = 0; c < k; ++c) {
    std::vector<double> cm(d, 0.0);
    int cnt = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] != c) continue;
      ++cnt;
      for (std::size_t j = 0; j < d; ++j) cm[j] += x[i][j];
    }
    if (cnt == 0) continue;
    for (double& v : cm) v /= cnt;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] != c) continue;
      for (std::size_t j = 0; j < d; ++j) within += (x[i][j] - cm[j]) * (x[i][j] - cm[j]);
    }
  }
  if (within == 0.0) return std::numeric_limits<double>::infinity();
  return ((total - within) / (k - 1)) / (within / static_cast<double>(n - static_cast<std::size_t>(k)));
}

/// Three Gaussian blobs in `dims` dimensions, centers 10 * sigma * sqrt(2)
/// apart or more.
inline std::vector<std::vector<double>> three_blobs(std::mt19937_64& rng, int per_blob, int dims, double sigma) {
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<std::vector<double>> x;
  for (int b = 0; b < 3; ++b) {
    for (int i = 0; i < per_blob; ++i) {
      std::vector<double> r(static_cast<std::size_t>(dims), 0.0);
      r[static_cast<std::size_t>(b)] = 10.0 * sigma;
      for (double& v : r) v += noise(rng);
      x.push_back(std::move(r));
    }
  }
  return x;
}

}  // namespace lyrictrack::testing
