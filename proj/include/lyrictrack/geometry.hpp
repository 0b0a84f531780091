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

// Convex polygon primitives used for box deduplication and IoU scoring.
//
// All polygons are convex and stored counter-clockwise, i.e. with positive
// signed (shoelace) area in a y-up frame. Image coordinates are y-down, so a
// quad that looks clockwise on screen is counter-clockwise here; the library
// only cares about the sign convention being consistent.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace lyrictrack::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

double cross(Point o, Point a, Point b);
double distance(Point a, Point b);

using Polygon = std::vector<Point>;

/// Four vertices, counter-clockwise, convex, positive area.
using Quad = std::array<Point, 4>;

// Intersections with area below this (px^2) are treated as empty.
inline constexpr double kDegenerateArea = 1e-9;

double signed_area(std::span<const Point> poly);
double area(std::span<const Point> poly);
Point centroid(std::span<const Point> poly);  // vertex mean

/// True when every turn has the same (non-negative) orientation and the
/// polygon has positive area. Collinear vertices are tolerated.
bool is_convex_ccw(std::span<const Point> poly);

/// Reverses vertex order when the polygon is clockwise.
Quad to_ccw(Quad q);

/// Convex ∩ convex by successive half-plane clipping. Returns nullopt when
/// the overlap is empty or its area is below kDegenerateArea.
std::optional<Polygon> intersect(std::span<const Point> a, std::span<const Point> b);

double intersection_area(std::span<const Point> a, std::span<const Point> b);

/// area(a ∩ b) / area(a ∪ b), in [0, 1]. Zero when both are degenerate.
double iou(std::span<const Point> a, std::span<const Point> b);

inline double iou(const Quad& a, const Quad& b) {
  return iou(std::span<const Point>(a), std::span<const Point>(b));
}

/// Axis-aligned rectangle [x0, x1] x [y0, y1] as a CCW quad.
Quad axis_aligned_quad(double x0, double y0, double x1, double y1);

/// Rectangle with the given center, edge lengths and rotation (radians) of
/// its first edge. Vertex 0 is the "top-left" corner before rotation.
Quad rotated_rect(Point center, double width, double height, double angle);

/// Center, mean opposite-edge lengths and first-edge angle of a quad.
struct QuadParams {
  Point center;
  double width = 0.0;
  double height = 0.0;
  double angle = 0.0;
};

QuadParams quad_params(const Quad& q);

}  // namespace lyrictrack::geometry
