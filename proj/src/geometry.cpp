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

#include "lyrictrack/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lyrictrack::geometry {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double signed_area(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

double area(std::span<const Point> poly) { return std::abs(signed_area(poly)); }

Point centroid(std::span<const Point> poly) {
  Point c;
  if (poly.empty()) return c;
  for (const Point& p : poly) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(poly.size());
  c.y /= static_cast<double>(poly.size());
  return c;
}

bool is_convex_ccw(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3 || !(signed_area(poly) > 0.0)) return false;
  // Relative tolerance so that near-collinear vertices from float noise pass.
  double scale = 0.0;
  for (const Point& p : poly) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double tol = 1e-12 * std::max(1.0, scale * scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < -tol) return false;
  }
  return true;
}

Quad to_ccw(Quad q) {
  if (signed_area(q) < 0.0) std::reverse(q.begin(), q.end());
  return q;
}

namespace {

// Keeps the part of `subject` on the left of the directed line a->b.
Polygon clip_half_plane(const Polygon& subject, Point a, Point b) {
  Polygon out;
  const std::size_t n = subject.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = subject[i];
    const Point& nxt = subject[(i + 1) % n];
    const double sc = cross(a, b, cur);
    const double sn = cross(a, b, nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc >= 0.0) != (sn >= 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

}  // namespace

std::optional<Polygon> intersect(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() < 3 || b.size() < 3) return std::nullopt;
  Polygon result(a.begin(), a.end());
  const std::size_t m = b.size();
  for (std::size_t i = 0; i < m && !result.empty(); ++i) {
    result = clip_half_plane(result, b[i], b[(i + 1) % m]);
  }
  if (result.size() < 3 || area(result) < kDegenerateArea) return std::nullopt;
  return result;
}

double intersection_area(std::span<const Point> a, std::span<const Point> b) {
  // Fixed argument order keeps the result bitwise symmetric.
  const bool swap = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end(), [](Point p, Point q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  const auto inter = swap ? intersect(b, a) : intersect(a, b);
  return inter ? area(*inter) : 0.0;
}

double iou(std::span<const Point> a, std::span<const Point> b) {
  const double inter = intersection_area(a, b);
  const double uni = area(a) + area(b) - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

Quad axis_aligned_quad(double x0, double y0, double x1, double y1) {
  return {Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}};
}

Quad rotated_rect(Point center, double width, double height, double angle) {
  const Point u{std::cos(angle), std::sin(angle)};
  const Point v{-u.y, u.x};
  const Point v0 = center - (0.5 * width) * u - (0.5 * height) * v;
  const Point v1 = v0 + width * u;
  return {v0, v1, v1 + height * v, v0 + height * v};
}

QuadParams quad_params(const Quad& q) {
  QuadParams p;
  p.center = centroid(q);
  p.width = 0.5 * (distance(q[0], q[1]) + distance(q[3], q[2]));
  p.height = 0.5 * (distance(q[1], q[2]) + distance(q[0], q[3]));
  p.angle = std::atan2(q[1].y - q[0].y, q[1].x - q[0].x);
  return p;
}

}  // namespace lyrictrack::geometry
