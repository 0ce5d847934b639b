// Copyright 2026 The AeroForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aeroforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aeroforge {

namespace {

double cross(Point o, Point a, Point b) noexcept { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

Polygon ensure_ccw(Polygon p) {
  if (signed_area(p) < 0) std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

Point rotate_about(Point p, Point center, double degrees) noexcept {
  const double rad = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad), s = std::sin(rad);
  const double dx = p.x - center.x, dy = p.y - center.y;
  return {center.x + c * dx - s * dy, center.y + s * dx + c * dy};
}

Polygon rotated_rect(Point center, double w, double h, double degrees) {
  const double hw = w / 2, hh = h / 2;
  Polygon p = {{center.x - hw, center.y - hh},
               {center.x + hw, center.y - hh},
               {center.x + hw, center.y + hh},
               {center.x - hw, center.y + hh}};
  for (auto& v : p) v = rotate_about(v, center, degrees);
  return p;
}

Polygon ellipse_polygon(Point center, double rx, double ry, double degrees, int segments) {
  Polygon p;
  p.reserve(static_cast<std::size_t>(segments));
  for (int i = 0; i < segments; ++i) {
    const double t = 2.0 * std::numbers::pi * i / segments;
    p.push_back(rotate_about({center.x + rx * std::cos(t), center.y + ry * std::sin(t)}, center, degrees));
  }
  return p;
}

double signed_area(std::span<const Point> poly) noexcept {
  double s = 0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return s / 2;
}

double area(std::span<const Point> poly) noexcept { return std::abs(signed_area(poly)); }

Point centroid(std::span<const Point> poly) noexcept {
  const double a = signed_area(poly);
  if (poly.empty()) return {};
  if (std::abs(a) < 1e-12) {
    Point m;
    for (const auto& p : poly) {
      m.x += p.x;
      m.y += p.y;
    }
    return {m.x / poly.size(), m.y / poly.size()};
  }
  double cx = 0, cy = 0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const double f = p.x * q.y - q.x * p.y;
    cx += (p.x + q.x) * f;
    cy += (p.y + q.y) * f;
  }
  return {cx / (6 * a), cy / (6 * a)};
}

Box bounding_box(std::span<const Point> poly) noexcept {
  if (poly.empty()) return {};
  Box b{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
  for (const auto& p : poly) {
    b.x_min = std::min(b.x_min, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.x_max = std::max(b.x_max, p.x);
    b.y_max = std::max(b.y_max, p.y);
  }
  return b;
}

Polygon convex_intersection(std::span<const Point> subject_in, std::span<const Point> clip_in) {
  if (subject_in.size() < 3 || clip_in.size() < 3) return {};
  Polygon output = ensure_ccw(Polygon(subject_in.begin(), subject_in.end()));
  const Polygon clip = ensure_ccw(Polygon(clip_in.begin(), clip_in.end()));
  for (std::size_t i = 0; i < clip.size() && !output.empty(); ++i) {
    const Point a = clip[i];
    const Point b = clip[(i + 1) % clip.size()];
    Polygon input = std::move(output);
    output.clear();
    for (std::size_t k = 0; k < input.size(); ++k) {
      const Point cur = input[k];
      const Point prev = input[(k + input.size() - 1) % input.size()];
      const double dc = cross(a, b, cur);
      const double dp = cross(a, b, prev);
      if (dc >= 0) {
        if (dp < 0) output.push_back({prev.x + (cur.x - prev.x) * dp / (dp - dc), prev.y + (cur.y - prev.y) * dp / (dp - dc)});
        output.push_back(cur);
      } else if (dp >= 0) {
        output.push_back({prev.x + (cur.x - prev.x) * dp / (dp - dc), prev.y + (cur.y - prev.y) * dp / (dp - dc)});
      }
    }
  }
  return output;
}

double intersection_area(std::span<const Point> a, std::span<const Point> b) {
  const Box ba = bounding_box(a), bb = bounding_box(b);
  if (ba.x_max <= bb.x_min || bb.x_max <= ba.x_min || ba.y_max <= bb.y_min || bb.y_max <= ba.y_min) return 0.0;
  return area(convex_intersection(a, b));
}

double iou(std::span<const Point> a, std::span<const Point> b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0) return 0.0;
  const double uni = area(a) + area(b) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

Polygon convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace aeroforge
