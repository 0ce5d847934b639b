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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aeroforge/geometry.hpp"
#include "aeroforge/scene.hpp"

namespace aeroforge {

enum class ClassLabel { Forest, Fire };

std::string_view to_string(ClassLabel c) noexcept;
std::optional<ClassLabel> class_label_from_string(std::string_view s) noexcept;

struct LabeledBox {
  ObjectClass object_class = ObjectClass::House;
  Box box;
  bool operator==(const LabeledBox&) const = default;
};

struct GroundTruth {
  std::string image_id;
  std::optional<ClassLabel> class_label;  // fire scenario
  std::optional<std::int64_t> house_count;  // counting scenario
  // nullopt for hand-labeled external rows that carry no boxes.
  std::optional<std::vector<LabeledBox>> boxes;
  std::optional<std::string> density_ref;

  bool operator==(const GroundTruth&) const = default;
};

// Counts houses, labels fire scenes, and boxes every object footprint (clipped to the image).
GroundTruth derive_ground_truth(const SceneGraph& scene, std::string image_id = {});

// Invariant problems for one record: exclusive label kind, box bounds/ordering, count == House boxes.
std::vector<std::string> check_ground_truth(const GroundTruth& gt, Scenario scenario, int width, int height);

nlohmann::json ground_truth_to_json(const GroundTruth& gt);
// Throws ValidationError on schema violations. image_id is taken from the enclosing row.
GroundTruth ground_truth_from_json(const nlohmann::json& j, const std::string& image_id);

struct DensityMap {
  int width = 0, height = 0;
  double sigma = 0;
  std::vector<double> values;  // row-major

  double total() const noexcept;
  // Sum over pixels [x0, x1) x [y0, y1).
  double region_sum(int x0, int y0, int x1, int y1) const noexcept;
};

// One Gaussian per house at its footprint centroid, evaluated at pixel centers within
// radius ceil(4*sigma) and renormalized after border truncation to unit mass.
DensityMap render_density_map(const SceneGraph& scene, double sigma);

// "AFDM", u32 LE width, u32 LE height, width*height f32 LE, row-major.
void write_density_map(const std::filesystem::path& path, const DensityMap& map);
DensityMap read_density_map(const std::filesystem::path& path);

}  // namespace aeroforge
