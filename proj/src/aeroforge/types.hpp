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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aeroforge {

enum class Scenario { FireClassification, HouseCounting };

// Ordinals are stable: they key each class's random sub-stream.
enum class ObjectClass : std::uint8_t {
  House = 0,
  Tree = 1,
  Fence = 2,
  Garden = 3,
  Pool = 4,
  Grass = 5,
  SmokePlume = 6,
  FireBlob = 7,
};

inline constexpr std::array<ObjectClass, 8> kAllObjectClasses = {
    ObjectClass::House,  ObjectClass::Tree,  ObjectClass::Fence,      ObjectClass::Garden,
    ObjectClass::Pool,   ObjectClass::Grass, ObjectClass::SmokePlume, ObjectClass::FireBlob};

// Painter's order: ground flora, fences, gardens, pools, houses, then fire and smoke.
constexpr int z_rank(ObjectClass c) noexcept {
  switch (c) {
    case ObjectClass::Grass: return 0;
    case ObjectClass::Tree: return 1;
    case ObjectClass::Fence: return 2;
    case ObjectClass::Garden: return 3;
    case ObjectClass::Pool: return 4;
    case ObjectClass::House: return 5;
    case ObjectClass::FireBlob: return 6;
    case ObjectClass::SmokePlume: return 7;
  }
  return 0;
}

std::string_view to_string(ObjectClass c) noexcept;
std::optional<ObjectClass> object_class_from_string(std::string_view s) noexcept;
std::string_view to_string(Scenario s) noexcept;
std::optional<Scenario> scenario_from_string(std::string_view s) noexcept;

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

struct ConstantDist {
  double value = 0.0;
  bool operator==(const ConstantDist&) const = default;
};
struct UniformIntDist {
  std::int64_t min = 0, max = 0;
  bool operator==(const UniformIntDist&) const = default;
};
struct UniformRealDist {
  double min = 0.0, max = 0.0;
  bool operator==(const UniformRealDist&) const = default;
};
// Truncated to [min, max]: up to 64 redraws, then clamp.
struct NormalDist {
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  bool operator==(const NormalDist&) const = default;
};
struct CategoricalDist {
  std::vector<double> values;
  std::vector<double> weights;
  bool operator==(const CategoricalDist&) const = default;
};

struct DistributionSpec {
  std::variant<ConstantDist, UniformIntDist, UniformRealDist, NormalDist, CategoricalDist> kind;

  static DistributionSpec constant(double v) { return {ConstantDist{v}}; }
  static DistributionSpec uniform_int(std::int64_t lo, std::int64_t hi) { return {UniformIntDist{lo, hi}}; }
  static DistributionSpec uniform_real(double lo, double hi) { return {UniformRealDist{lo, hi}}; }
  static DistributionSpec normal(double mean, double sd, double lo, double hi) {
    return {NormalDist{mean, sd, lo, hi}};
  }
  static DistributionSpec categorical(std::vector<double> values, std::vector<double> weights) {
    return {CategoricalDist{std::move(values), std::move(weights)}};
  }

  // Closed hull of the values the distribution can produce.
  double support_min() const;
  double support_max() const;
  // True when every producible value is an integer.
  bool integral() const;

  bool operator==(const DistributionSpec&) const = default;
};

struct PaletteEntry {
  std::array<int, 3> rgb{};
  std::array<int, 3> jitter{};  // per-channel +/- uniform integer jitter
  bool operator==(const PaletteEntry&) const = default;
};

struct OverlapPolicy {
  enum class Kind { Forbid, AllowWithin };
  Kind kind = Kind::Forbid;
  double max_iou = 0.0;  // AllowWithin only

  static OverlapPolicy forbid() { return {}; }
  static OverlapPolicy allow_within(double iou) { return {Kind::AllowWithin, iou}; }
  bool operator==(const OverlapPolicy&) const = default;
};

struct ObjectClassSpec {
  ObjectClass object_class = ObjectClass::House;
  DistributionSpec width = DistributionSpec::constant(8);
  DistributionSpec height = DistributionSpec::constant(8);
  DistributionSpec rotation = DistributionSpec::constant(0);  // degrees
  std::vector<PaletteEntry> palette;
  DistributionSpec opacity = DistributionSpec::constant(1);
  DistributionSpec count = DistributionSpec::constant(0);
  OverlapPolicy overlap;
  // Classes placed earlier whose footprints this class must respect under `overlap`.
  std::vector<ObjectClass> avoid;
  // > 0 renders this class into a separately blurred layer.
  double blur_sigma = 0.0;

  bool operator==(const ObjectClassSpec&) const = default;
};

struct FilterSpec {
  enum class Kind { GaussianBlur, Smooth, EdgeEnhance };
  Kind kind = Kind::Smooth;
  double sigma = 0.0;  // GaussianBlur only

  static FilterSpec gaussian_blur(double s) { return {Kind::GaussianBlur, s}; }
  static FilterSpec smooth() { return {Kind::Smooth, 0.0}; }
  static FilterSpec edge_enhance() { return {Kind::EdgeEnhance, 0.0}; }
  bool operator==(const FilterSpec&) const = default;
};

struct BackgroundSpec {
  enum class Mode { Procedural, Hybrid };
  Mode mode = Mode::Procedural;
  std::array<int, 3> base_rgb{34, 85, 34};
  int noise_amplitude = 0;
  std::string directory;  // Hybrid only

  bool operator==(const BackgroundSpec&) const = default;
};

struct GeneratorConfig {
  Scenario scenario = Scenario::HouseCounting;
  int image_width = 100;
  int image_height = 100;
  std::uint64_t master_seed = 1;
  int max_count = 38;
  std::vector<ObjectClassSpec> object_specs;
  std::vector<FilterSpec> filter_chain;
  BackgroundSpec background;
  DistributionSpec count_distribution = DistributionSpec::uniform_int(0, 38);
  double fire_probability = 0.5;
  std::string detail_version = "v1";
  double density_sigma = 3.0;

  const ObjectClassSpec* find_spec(ObjectClass c) const noexcept {
    for (const auto& s : object_specs)
      if (s.object_class == c) return &s;
    return nullptr;
  }

  bool operator==(const GeneratorConfig&) const = default;
};

}  // namespace aeroforge
