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

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "aeroforge/geometry.hpp"
#include "aeroforge/rng.hpp"
#include "aeroforge/types.hpp"

namespace aeroforge {

// Primitive shapes in pixel space. Pixel (i, j) covers [i, i+1) x [j, j+1); coverage is
// decided at the pixel center.
struct Dot {
  Point at;
  double radius = 0.5;  // <= 0.5 paints exactly the pixel containing `at`
};
struct Line {
  Point from, to;
  double width = 1.0;
};
struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
  double degrees = 0;  // rotation about the rectangle center
};
struct PolygonShape {
  Polygon vertices;
};
struct Circle {
  Point center;
  double radius = 0;
};
struct Ellipse {
  Point center;
  double rx = 0, ry = 0;
  double degrees = 0;
};

using Shape = std::variant<Dot, Line, Rect, PolygonShape, Circle, Ellipse>;

struct Outline {
  Rgb color;
  double width = 1.0;
};

struct Style {
  std::optional<Rgb> fill;  // nullopt: outline only
  double opacity = 1.0;
  std::optional<Outline> outline;
};

struct Primitive {
  Shape shape;
  Style style;
};

struct PlacedObject {
  ObjectClass object_class = ObjectClass::House;
  Point anchor;
  Polygon footprint;  // convex
  double width = 0, height = 0;
  double rotation = 0;  // degrees
  Rgb color;
  double opacity = 1.0;
  std::vector<Primitive> parts;  // drawn in order
};

struct SceneGraph {
  Scenario scenario = Scenario::HouseCounting;
  int width = 100, height = 100;
  std::uint64_t image_seed = 0;
  std::vector<PlacedObject> objects;  // z-order: first is bottom-most
  std::int64_t sampled_house_count = 0;
  bool contains_fire = false;

  std::size_t tally(ObjectClass c) const noexcept {
    std::size_t n = 0;
    for (const auto& o : objects) n += o.object_class == c;
    return n;
  }
};

inline constexpr int kPlacementAttempts = 1000;

struct Canvas {
  int width = 100, height = 100;
};

// Rejection-samples `count` objects of `spec`. Throws PlacementExhausted after
// kPlacementAttempts failed attempts for any single object. Non-empty `attach_to`
// anchors objects near those points (smoke above fire).
std::vector<PlacedObject> place_objects(std::int64_t count, const ObjectClassSpec& spec,
                                        std::span<const Polygon> occupied, RngStream& rng, Canvas canvas,
                                        std::span<const Point> attach_to = {});

// `force_fire` overrides the Bernoulli fire draw (balanced-quota generation); the draw is
// still consumed so other streams are unaffected.
SceneGraph sample_scene(const GeneratorConfig& config, std::uint64_t image_seed,
                        std::optional<bool> force_fire = std::nullopt);

}  // namespace aeroforge
