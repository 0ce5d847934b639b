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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aeroforge/distribution.hpp"
#include "aeroforge/errors.hpp"
#include "aeroforge/scene.hpp"

namespace aeroforge {

namespace {

std::uint8_t clamp_channel(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

Rgb shade(Rgb c, double factor) { return {clamp_channel(c.r * factor), clamp_channel(c.g * factor), clamp_channel(c.b * factor)}; }

Rgb jittered(const PaletteEntry& e, RngStream& rng) {
  auto ch = [&](int i) { return clamp_channel(e.rgb[i] + static_cast<double>(rng.uniform_int(-e.jitter[i], e.jitter[i]))); };
  const auto r = ch(0);
  const auto g = ch(1);
  const auto b = ch(2);
  return {r, g, b};
}

bool uses_ellipse_footprint(ObjectClass c) {
  return c == ObjectClass::Tree || c == ObjectClass::Grass || c == ObjectClass::FireBlob ||
         c == ObjectClass::SmokePlume;
}

Polygon footprint_for(ObjectClass c, Point anchor, double w, double h, double rot) {
  if (uses_ellipse_footprint(c)) return ellipse_polygon(anchor, w / 2, h / 2, rot);
  return rotated_rect(anchor, w, h, rot);
}

// Local (unrotated, anchor-relative) point to image space.
Point to_image(const PlacedObject& o, double lx, double ly) {
  return rotate_about({o.anchor.x + lx, o.anchor.y + ly}, o.anchor, o.rotation);
}

PolygonShape local_quad(const PlacedObject& o, double x0, double y0, double x1, double y1) {
  return {{to_image(o, x0, y0), to_image(o, x1, y0), to_image(o, x1, y1), to_image(o, x0, y1)}};
}

void build_house(PlacedObject& o) {
  const double a = o.width / 2, b = o.height / 2;
  o.parts.push_back({PolygonShape{o.footprint}, {shade(o.color, 0.7), o.opacity, std::nullopt}});
  const double inset = std::min(0.7, std::min(a, b) / 3);
  const double ra = a - inset, rb = b - inset;
  // Gable roof: two half-tone faces meeting at a ridge along the width axis.
  o.parts.push_back({local_quad(o, -ra, -rb, ra, 0), {shade(o.color, 1.12), o.opacity, std::nullopt}});
  o.parts.push_back({local_quad(o, -ra, 0, ra, rb), {shade(o.color, 0.86), o.opacity, std::nullopt}});
}

void build_tree(PlacedObject& o) {
  o.parts.push_back({Ellipse{o.anchor, o.width / 2, o.height / 2, o.rotation}, {o.color, o.opacity, std::nullopt}});
  o.parts.push_back({Ellipse{to_image(o, -o.width * 0.12, -o.height * 0.12), o.width * 0.25, o.height * 0.25, o.rotation},
                     {shade(o.color, 1.25), o.opacity * 0.8, std::nullopt}});
}

void build_fence(PlacedObject& o) {
  const auto& f = o.footprint;
  for (std::size_t i = 0; i < f.size(); ++i)
    o.parts.push_back({Line{f[i], f[(i + 1) % f.size()], 1.0}, {o.color, o.opacity, std::nullopt}});
  for (const auto& corner : f) o.parts.push_back({Dot{corner, 0.5}, {shade(o.color, 0.6), o.opacity, std::nullopt}});
}

void build_garden(PlacedObject& o) {
  o.parts.push_back({PolygonShape{o.footprint}, {o.color, o.opacity, std::nullopt}});
  const double a = o.width / 2, b = o.height / 2;
  const int rows = std::max(2, static_cast<int>(o.height / 3));
  const Rgb row_color = {clamp_channel(o.color.r * 0.6), clamp_channel(o.color.g * 0.9 + 30), clamp_channel(o.color.b * 0.6)};
  for (int r = 1; r <= rows; ++r) {
    const double ly = -b + 2 * b * r / (rows + 1);
    o.parts.push_back({Line{to_image(o, -a + 0.5, ly), to_image(o, a - 0.5, ly), 1.0}, {row_color, o.opacity, std::nullopt}});
  }
}

void build_pool(PlacedObject& o) {
  const Rgb rim = {clamp_channel(o.color.r + 90), clamp_channel(o.color.g + 80), clamp_channel(o.color.b + 40)};
  o.parts.push_back({PolygonShape{o.footprint}, {o.color, o.opacity, Outline{rim, 1.0}}});
}

void build_grass(PlacedObject& o, RngStream& rng) {
  o.parts.push_back({Ellipse{o.anchor, o.width / 2, o.height / 2, o.rotation}, {o.color, o.opacity, std::nullopt}});
  const auto tufts = rng.uniform_int(3, 8);
  for (std::int64_t i = 0; i < tufts; ++i) {
    // Uniform point in the unit disc, scaled into the patch ellipse.
    const double t = rng.uniform01() * 2 * std::numbers::pi;
    const double r = std::sqrt(rng.uniform01()) * 0.8;
    const Point p = to_image(o, r * std::cos(t) * o.width / 2, r * std::sin(t) * o.height / 2);
    o.parts.push_back({Dot{p, 0.5}, {shade(o.color, 0.75), std::min(1.0, o.opacity + 0.2), std::nullopt}});
  }
}

void build_fire(PlacedObject& o, const ObjectClassSpec& spec, RngStream& rng) {
  const auto layers = rng.uniform_int(2, 6);
  const auto palette_size = static_cast<std::int64_t>(spec.palette.size());
  for (std::int64_t j = 0; j < layers; ++j) {
    const double scale = 1.0 - 0.75 * static_cast<double>(j) / static_cast<double>(layers);
    const double dx = rng.uniform_real(-0.1, 0.1) * o.width * (1 - scale);
    const double dy = rng.uniform_real(-0.1, 0.1) * o.height * (1 - scale);
    const auto idx = std::min(palette_size - 1, j * palette_size / layers);
    const Rgb c = j == 0 ? o.color : jittered(spec.palette[static_cast<std::size_t>(idx)], rng);
    o.parts.push_back({Ellipse{to_image(o, dx, dy), o.width / 2 * scale, o.height / 2 * scale, o.rotation},
                       {c, o.opacity, std::nullopt}});
  }
}

void build_smoke(PlacedObject& o, const ObjectClassSpec& spec, RngStream& rng) {
  const auto puffs = rng.uniform_int(5, 12);
  const PaletteEntry& base = spec.palette[rng.below(spec.palette.size())];
  for (std::int64_t i = 0; i < puffs; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(puffs - 1);
    const double rx = o.width / 2 * (0.45 + 0.5 * t);
    const double ry = std::min(rx * 0.8, o.height / 2);
    // Bottom puff sits at the base, later ones drift upward (negative y).
    const double ly = (o.height / 2 - ry) - t * (o.height - 2 * ry);
    const double lx = rng.uniform_real(-0.15, 0.15) * (o.width / 2 - rx);
    const Rgb c = i == 0 ? o.color : jittered(base, rng);
    o.parts.push_back({Ellipse{to_image(o, lx, ly), rx, ry, o.rotation}, {c, o.opacity, std::nullopt}});
  }
}

bool overlaps(const Polygon& candidate, const Polygon& other, const OverlapPolicy& policy) {
  if (policy.kind == OverlapPolicy::Kind::Forbid) return intersection_area(candidate, other) > 0.0;
  if (policy.max_iou >= 1.0) return false;
  if (policy.max_iou <= 0.0) return intersection_area(candidate, other) > 0.0;
  return iou(candidate, other) > policy.max_iou;
}

bool constrains(const OverlapPolicy& p) { return p.kind == OverlapPolicy::Kind::Forbid || p.max_iou < 1.0; }

}  // namespace

std::vector<PlacedObject> place_objects(std::int64_t count, const ObjectClassSpec& spec,
                                        std::span<const Polygon> occupied, RngStream& rng, Canvas canvas,
                                        std::span<const Point> attach_to) {
  std::vector<PlacedObject> placed;
  if (count <= 0) return placed;
  placed.reserve(static_cast<std::size_t>(count));
  const bool must_be_inside = spec.object_class == ObjectClass::House;
  const bool check_overlap = constrains(spec.overlap);

  for (std::int64_t n = 0; n < count; ++n) {
    bool accepted = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !accepted; ++attempt) {
      PlacedObject o;
      o.object_class = spec.object_class;
      o.width = sample_from(spec.width, rng);
      o.height = sample_from(spec.height, rng);
      o.rotation = sample_from(spec.rotation, rng);
      if (!attach_to.empty()) {
        const Point base = attach_to[static_cast<std::size_t>(n) % attach_to.size()];
        const double ax = base.x + rng.uniform_real(-0.15, 0.15) * o.width;
        const double ay = base.y - 0.4 * o.height;
        // Fires close to the border would otherwise push every smoke anchor off the canvas.
        o.anchor = {std::clamp(ax, 0.5, canvas.width - 0.5), std::clamp(ay, 0.5, canvas.height - 0.5)};
      } else {
        o.anchor = {rng.uniform_real(0, canvas.width), rng.uniform_real(0, canvas.height)};
      }
      o.footprint = footprint_for(o.object_class, o.anchor, o.width, o.height, o.rotation);

      const Point c = centroid(o.footprint);
      if (!(c.x >= 0 && c.x < canvas.width && c.y >= 0 && c.y < canvas.height)) continue;
      if (must_be_inside) {
        const Box b = bounding_box(o.footprint);
        if (b.x_min < 0 || b.y_min < 0 || b.x_max > canvas.width || b.y_max > canvas.height) continue;
      }
      if (check_overlap) {
        auto clash = [&](const Polygon& other) { return overlaps(o.footprint, other, spec.overlap); };
        if (std::any_of(occupied.begin(), occupied.end(), clash)) continue;
        if (std::any_of(placed.begin(), placed.end(), [&](const PlacedObject& p) { return clash(p.footprint); }))
          continue;
      }

      o.color = jittered(spec.palette[rng.below(spec.palette.size())], rng);
      o.opacity = std::clamp(sample_from(spec.opacity, rng), 0.0, 1.0);
      switch (o.object_class) {
        case ObjectClass::House: build_house(o); break;
        case ObjectClass::Tree: build_tree(o); break;
        case ObjectClass::Fence: build_fence(o); break;
        case ObjectClass::Garden: build_garden(o); break;
        case ObjectClass::Pool: build_pool(o); break;
        case ObjectClass::Grass: build_grass(o, rng); break;
        case ObjectClass::FireBlob: build_fire(o, spec, rng); break;
        case ObjectClass::SmokePlume: build_smoke(o, spec, rng); break;
      }
      placed.push_back(std::move(o));
      accepted = true;
    }
    if (!accepted) throw PlacementExhausted(std::string(to_string(spec.object_class)), placed.size());
  }
  return placed;
}

SceneGraph sample_scene(const GeneratorConfig& config, std::uint64_t image_seed, std::optional<bool> force_fire) {
  SceneGraph scene;
  scene.scenario = config.scenario;
  scene.width = config.image_width;
  scene.height = config.image_height;
  scene.image_seed = image_seed;

  const RngStream image(image_seed);
  RngStream scene_rng = image.fork(StreamTag::Scene);
  bool fire = false;
  std::int64_t houses = 0;
  if (config.scenario == Scenario::FireClassification) {
    const bool drawn = scene_rng.bernoulli(config.fire_probability);
    fire = force_fire.value_or(drawn);
  } else {
    houses = sample_count(config.count_distribution, scene_rng);
  }

  std::vector<const ObjectClassSpec*> order;
  for (const auto& s : config.object_specs) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return z_rank(a->object_class) < z_rank(b->object_class); });

  const Canvas canvas{config.image_width, config.image_height};
  for (const ObjectClassSpec* spec : order) {
    const ObjectClass cls = spec->object_class;
    RngStream rng = image.fork(static_cast<std::uint64_t>(StreamTag::ObjectClassBase) + static_cast<std::uint64_t>(cls));

    std::int64_t count = 0;
    const bool fire_class = cls == ObjectClass::FireBlob || cls == ObjectClass::SmokePlume;
    if (cls == ObjectClass::House && config.scenario == Scenario::HouseCounting) {
      count = houses;
    } else if (fire_class && config.scenario == Scenario::FireClassification) {
      count = fire ? std::max<std::int64_t>(1, sample_count(spec->count, rng)) : 0;
    } else {
      count = sample_count(spec->count, rng);
    }

    std::vector<Polygon> occupied;
    std::vector<Point> attach;
    for (const auto& o : scene.objects) {
      if (std::find(spec->avoid.begin(), spec->avoid.end(), o.object_class) != spec->avoid.end())
        occupied.push_back(o.footprint);
      if (cls == ObjectClass::SmokePlume && o.object_class == ObjectClass::FireBlob) attach.push_back(o.anchor);
    }

    auto placed = place_objects(count, *spec, occupied, rng, canvas, attach);
    for (auto& o : placed) scene.objects.push_back(std::move(o));
  }

  scene.sampled_house_count = static_cast<std::int64_t>(scene.tally(ObjectClass::House));
  scene.contains_fire = scene.tally(ObjectClass::FireBlob) + scene.tally(ObjectClass::SmokePlume) > 0;
  return scene;
}

}  // namespace aeroforge
