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

#pragma once

#include <span>
#include <vector>

namespace aeroforge {

struct Point {
  double x = 0.0, y = 0.0;
  bool operator==(const Point&) const = default;
};

using Polygon = std::vector<Point>;

struct Box {
  double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;
  bool operator==(const Box&) const = default;
  double width() const noexcept { return x_max - x_min; }
  double height() const noexcept { return y_max - y_min; }
};

// Rectangle of size w x h centered at `center`, rotated `degrees` clockwise in image space
// (y axis points down). Vertices are in counter-clockwise order on screen.
Polygon rotated_rect(Point center, double w, double h, double degrees);
// Convex polygon approximation of a rotated ellipse with semi-axes rx, ry.
Polygon ellipse_polygon(Point center, double rx, double ry, double degrees, int segments = 24);

double signed_area(std::span<const Point> poly) noexcept;
double area(std::span<const Point> poly) noexcept;
Point centroid(std::span<const Point> poly) noexcept;
Box bounding_box(std::span<const Point> poly) noexcept;

// Intersection of two convex polygons (Sutherland-Hodgman).
Polygon convex_intersection(std::span<const Point> subject, std::span<const Point> clip);
double intersection_area(std::span<const Point> a, std::span<const Point> b);
// Intersection over union of two convex polygons; 0 when either is degenerate.
double iou(std::span<const Point> a, std::span<const Point> b);

// Andrew's monotone chain; counter-clockwise in the y-up convention, no collinear points.
Polygon convex_hull(std::vector<Point> points);

Point rotate_about(Point p, Point center, double degrees) noexcept;

}  // namespace aeroforge
