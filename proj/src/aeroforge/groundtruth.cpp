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

#include "aeroforge/groundtruth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "aeroforge/errors.hpp"

namespace aeroforge {

using nlohmann::json;

std::string_view to_string(ClassLabel c) noexcept { return c == ClassLabel::Fire ? "fire" : "forest"; }

std::optional<ClassLabel> class_label_from_string(std::string_view s) noexcept {
  if (s == "fire") return ClassLabel::Fire;
  if (s == "forest") return ClassLabel::Forest;
  return std::nullopt;
}

GroundTruth derive_ground_truth(const SceneGraph& scene, std::string image_id) {
  GroundTruth gt;
  gt.image_id = std::move(image_id);
  if (scene.scenario == Scenario::FireClassification)
    gt.class_label = scene.contains_fire ? ClassLabel::Fire : ClassLabel::Forest;
  else
    gt.house_count = static_cast<std::int64_t>(scene.tally(ObjectClass::House));

  std::vector<LabeledBox> boxes;
  boxes.reserve(scene.objects.size());
  for (const auto& o : scene.objects) {
    Box b = bounding_box(o.footprint);
    b.x_min = std::clamp(b.x_min, 0.0, static_cast<double>(scene.width));
    b.x_max = std::clamp(b.x_max, 0.0, static_cast<double>(scene.width));
    b.y_min = std::clamp(b.y_min, 0.0, static_cast<double>(scene.height));
    b.y_max = std::clamp(b.y_max, 0.0, static_cast<double>(scene.height));
    if (b.x_min < b.x_max && b.y_min < b.y_max) boxes.push_back({o.object_class, b});
  }
  gt.boxes = std::move(boxes);
  return gt;
}

std::vector<std::string> check_ground_truth(const GroundTruth& gt, Scenario scenario, int width, int height) {
  std::vector<std::string> out;
  if (gt.class_label && gt.house_count) out.push_back("both class_label and house_count present");
  if (scenario == Scenario::FireClassification && !gt.class_label) out.push_back("missing class_label");
  if (scenario == Scenario::HouseCounting && !gt.house_count) out.push_back("missing house_count");
  if (scenario == Scenario::FireClassification && gt.house_count) out.push_back("house_count present in a classification dataset");
  if (scenario == Scenario::HouseCounting && gt.class_label) out.push_back("class_label present in a counting dataset");
  if (gt.house_count && *gt.house_count < 0) out.push_back("negative house_count");
  if (gt.boxes) {
    std::int64_t houses = 0;
    for (std::size_t i = 0; i < gt.boxes->size(); ++i) {
      const auto& [cls, b] = (*gt.boxes)[i];
      houses += cls == ObjectClass::House;
      if (!(b.x_min < b.x_max && b.y_min < b.y_max))
        out.push_back("box " + std::to_string(i) + " is empty or inverted");
      if (b.x_min < 0 || b.y_min < 0 || b.x_max > width || b.y_max > height)
        out.push_back("box " + std::to_string(i) + " exceeds image bounds");
    }
    if (gt.house_count && *gt.house_count != houses)
      out.push_back("house_count " + std::to_string(*gt.house_count) + " != " + std::to_string(houses) + " house boxes");
  }
  return out;
}

json ground_truth_to_json(const GroundTruth& gt) {
  json j = json::object();
  if (gt.class_label) j["class_label"] = std::string(to_string(*gt.class_label));
  if (gt.house_count) j["house_count"] = *gt.house_count;
  if (gt.boxes) {
    json boxes = json::array();
    for (const auto& [cls, b] : *gt.boxes)
      boxes.push_back(json::array({std::string(to_string(cls)), b.x_min, b.y_min, b.x_max, b.y_max}));
    j["boxes"] = std::move(boxes);
  }
  if (gt.density_ref) j["density_ref"] = *gt.density_ref;
  return j;
}

GroundTruth ground_truth_from_json(const json& j, const std::string& image_id) {
  std::vector<std::string> problems;
  GroundTruth gt;
  gt.image_id = image_id;
  if (!j.is_object()) throw ValidationError({"ground_truth: expected an object"});
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "class_label" && it.key() != "house_count" && it.key() != "boxes" && it.key() != "density_ref")
      problems.push_back("ground_truth." + it.key() + ": unknown field");
  if (auto it = j.find("class_label"); it != j.end()) {
    auto label = it->is_string() ? class_label_from_string(it->get<std::string>()) : std::nullopt;
    if (label) gt.class_label = label;
    else problems.push_back("ground_truth.class_label: expected \"fire\" or \"forest\"");
  }
  if (auto it = j.find("house_count"); it != j.end()) {
    if (it->is_number_integer()) gt.house_count = it->get<std::int64_t>();
    else problems.push_back("ground_truth.house_count: expected an integer");
  }
  if (auto it = j.find("boxes"); it != j.end()) {
    std::vector<LabeledBox> boxes;
    if (!it->is_array()) problems.push_back("ground_truth.boxes: expected an array");
    else
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& e = (*it)[i];
        auto cls = e.is_array() && e.size() == 5 && e[0].is_string() ? object_class_from_string(e[0].get<std::string>())
                                                                       : std::nullopt;
        if (!cls || !e[1].is_number() || !e[2].is_number() || !e[3].is_number() || !e[4].is_number()) {
          problems.push_back("ground_truth.boxes[" + std::to_string(i) + "]: expected [class, x_min, y_min, x_max, y_max]");
          continue;
        }
        boxes.push_back({*cls, {e[1].get<double>(), e[2].get<double>(), e[3].get<double>(), e[4].get<double>()}});
      }
    gt.boxes = std::move(boxes);
  }
  if (auto it = j.find("density_ref"); it != j.end()) {
    if (it->is_string()) gt.density_ref = it->get<std::string>();
    else problems.push_back("ground_truth.density_ref: expected a string");
  }
  if (!problems.empty()) throw ValidationError(problems);
  return gt;
}

double DensityMap::total() const noexcept {
  double s = 0;
  for (double v : values) s += v;
  return s;
}

double DensityMap::region_sum(int x0, int y0, int x1, int y1) const noexcept {
  double s = 0;
  for (int y = std::max(0, y0); y < std::min(height, y1); ++y)
    for (int x = std::max(0, x0); x < std::min(width, x1); ++x) s += values[static_cast<std::size_t>(y) * width + x];
  return s;
}

DensityMap render_density_map(const SceneGraph& scene, double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw ValidationError({"density sigma must be > 0"});
  DensityMap map{scene.width, scene.height, sigma, std::vector<double>(static_cast<std::size_t>(scene.width) * scene.height, 0.0)};
  const int radius = static_cast<int>(std::ceil(4 * sigma));
  std::vector<double> kernel;
  for (const auto& o : scene.objects) {
    if (o.object_class != ObjectClass::House) continue;
    const Point c = centroid(o.footprint);
    const int cx = static_cast<int>(std::floor(c.x)), cy = static_cast<int>(std::floor(c.y));
    const int x0 = std::max(0, cx - radius), x1 = std::min(scene.width - 1, cx + radius);
    const int y0 = std::max(0, cy - radius), y1 = std::min(scene.height - 1, cy + radius);
    if (x0 > x1 || y0 > y1) continue;  // unreachable for houses, which lie inside the image
    kernel.assign(static_cast<std::size_t>(x1 - x0 + 1) * (y1 - y0 + 1), 0.0);
    double mass = 0;
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const double dx = x + 0.5 - c.x, dy = y + 0.5 - c.y;
        const double v = std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
        kernel[static_cast<std::size_t>(y - y0) * (x1 - x0 + 1) + (x - x0)] = v;
        mass += v;
      }
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        map.values[static_cast<std::size_t>(y) * scene.width + x] += kernel[static_cast<std::size_t>(y - y0) * (x1 - x0 + 1) + (x - x0)] / mass;
  }
  return map;
}

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(const unsigned char* b) {
  return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
}

}  // namespace

void write_density_map(const std::filesystem::path& path, const DensityMap& map) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write density map '" + path.string() + "'");
  out.write("AFDM", 4);
  put_u32(out, static_cast<std::uint32_t>(map.width));
  put_u32(out, static_cast<std::uint32_t>(map.height));
  for (double v : map.values) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  if (!out) throw IoError("failed writing density map '" + path.string() + "'");
}

DensityMap read_density_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open density map '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "AFDM", 4) != 0) throw IoError("not an AFDM file '" + path.string() + "'");
  DensityMap map;
  map.width = static_cast<int>(get_u32(bytes.data() + 4));
  map.height = static_cast<int>(get_u32(bytes.data() + 8));
  const std::size_t n = static_cast<std::size_t>(map.width) * map.height;
  if (map.width <= 0 || map.height <= 0 || bytes.size() != 12 + 4 * n) throw IoError("truncated AFDM file '" + path.string() + "'");
  map.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) map.values[i] = std::bit_cast<float>(get_u32(bytes.data() + 12 + 4 * i));
  return map;
}

}  // namespace aeroforge
