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
#include <cstring>

#include "aeroforge/config.hpp"
#include "aeroforge/errors.hpp"
#include "aeroforge/groundtruth.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aeroforge;
using D = DistributionSpec;

namespace {

PlacedObject house_at(Point c, double size = 8) {
  PlacedObject o;
  o.object_class = ObjectClass::House;
  o.anchor = c;
  o.footprint = rotated_rect(c, size, size, 0);
  return o;
}

std::size_t house_boxes(const GroundTruth& gt) {
  return static_cast<std::size_t>(std::count_if(gt.boxes->begin(), gt.boxes->end(), [](const LabeledBox& b) {
    return b.object_class == ObjectClass::House;
  }));
}

}  // namespace

TEST_SUITE("groundtruth") {
  TEST_CASE("scene with 0 houses -> house_count 0 and no House boxes") {
    auto c = default_config(Scenario::HouseCounting);
    c.count_distribution = D::constant(0);
    const auto gt = derive_ground_truth(sample_scene(c, 4), "img");
    CHECK(gt.house_count == 0);
    CHECK(house_boxes(gt) == 0);
    CHECK_FALSE(gt.class_label.has_value());
  }

  TEST_CASE("fire scene -> class_label Fire, forest scene -> Forest") {
    const auto c = default_config(Scenario::FireClassification);
    CHECK(derive_ground_truth(sample_scene(c, 1, true)).class_label == ClassLabel::Fire);
    CHECK(derive_ground_truth(sample_scene(c, 1, false)).class_label == ClassLabel::Forest);
    CHECK_FALSE(derive_ground_truth(sample_scene(c, 1, true)).house_count.has_value());
  }

  TEST_CASE("7 placed houses -> house_count 7 and 7 House boxes") {
    auto c = default_config(Scenario::HouseCounting);
    c.count_distribution = D::constant(7);
    const auto scene = sample_scene(c, 21);
    REQUIRE(scene.tally(ObjectClass::House) == 7);
    const auto gt = derive_ground_truth(scene, "img");
    CHECK(gt.house_count == 7);
    CHECK(house_boxes(gt) == 7);
    CHECK(check_ground_truth(gt, Scenario::HouseCounting, 100, 100).empty());
  }

  TEST_CASE("boxes are clipped to the image and well ordered") {
    const auto c = default_config(Scenario::FireClassification);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto gt = derive_ground_truth(sample_scene(c, seed));
      for (const auto& b : *gt.boxes) {
        REQUIRE(b.box.x_min >= 0);
        REQUIRE(b.box.y_min >= 0);
        REQUIRE(b.box.x_max <= 100);
        REQUIRE(b.box.y_max <= 100);
        REQUIRE(b.box.x_min < b.box.x_max);
        REQUIRE(b.box.y_min < b.box.y_max);
      }
    }
  }

  TEST_CASE("check_ground_truth flags invariant breaks") {
    GroundTruth gt;
    gt.image_id = "x";
    gt.house_count = 2;
    gt.boxes = std::vector<LabeledBox>{{ObjectClass::House, {1, 1, 5, 5}}};
    CHECK_FALSE(check_ground_truth(gt, Scenario::HouseCounting, 100, 100).empty());  // count != House boxes
    gt.house_count = 1;
    CHECK(check_ground_truth(gt, Scenario::HouseCounting, 100, 100).empty());
    gt.boxes->push_back({ObjectClass::Tree, {50, 50, 120, 60}});
    CHECK_FALSE(check_ground_truth(gt, Scenario::HouseCounting, 100, 100).empty());  // out of bounds
    gt.boxes->pop_back();
    gt.class_label = ClassLabel::Fire;
    CHECK_FALSE(check_ground_truth(gt, Scenario::HouseCounting, 100, 100).empty());  // both label kinds
  }

  TEST_CASE("JSON round trip, boxes optional") {
    auto c = default_config(Scenario::HouseCounting);
    const auto gt = derive_ground_truth(sample_scene(c, 2), "img_000002");
    CHECK(ground_truth_from_json(ground_truth_to_json(gt), "img_000002") == gt);
    GroundTruth external;
    external.image_id = "photo";
    external.house_count = 12;
    const auto back = ground_truth_from_json(ground_truth_to_json(external), "photo");
    CHECK(back == external);
    CHECK_FALSE(back.boxes.has_value());
    CHECK_THROWS_AS(ground_truth_from_json(nlohmann::json{{"house_count", "many"}}, "bad"), ValidationError);
  }

  TEST_CASE("0 houses -> all-zero density map") {
    SceneGraph s;
    const auto m = render_density_map(s, 3.0);
    CHECK(m.values.size() == 100 * 100);
    CHECK(std::all_of(m.values.begin(), m.values.end(), [](double v) { return v == 0.0; }));
    CHECK(m.total() == 0.0);
  }

  TEST_CASE("5 houses, any sigma -> total mass 5 +- 5e-3, even near the border") {
    SceneGraph s;
    for (Point p : {Point{2, 2}, Point{50, 50}, Point{97.5, 10}, Point{30, 99}, Point{70, 70}})
      s.objects.push_back(house_at(p, 3));
    for (double sigma : {0.5, 1.0, 3.0, 8.0, 20.0}) CHECK(std::abs(render_density_map(s, sigma).total() - 5.0) <= 5e-3);
  }

  TEST_CASE("1 centered house, sigma 2 -> argmax at the centroid cell") {
    SceneGraph s;
    s.objects.push_back(house_at({50.5, 50.5}));
    const auto m = render_density_map(s, 2.0);
    const auto it = std::max_element(m.values.begin(), m.values.end());
    const auto idx = static_cast<std::size_t>(it - m.values.begin());
    CHECK(idx % 100 == 50);
    CHECK(idx / 100 == 50);
    // Direct evaluation oracle: the neighbour one pixel right holds exp(-1/(2 sigma^2)) of the peak.
    CHECK(m.values[50 * 100 + 51] / m.values[50 * 100 + 50] == doctest::Approx(std::exp(-1.0 / 8.0)));
  }

  TEST_CASE("region sums split the mass") {
    SceneGraph s;
    s.objects.push_back(house_at({25, 50}));
    s.objects.push_back(house_at({75, 50}));
    const auto m = render_density_map(s, 2.0);
    CHECK(m.region_sum(0, 0, 50, 100) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m.region_sum(50, 0, 100, 100) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("sigma <= 0 is rejected") {
    CHECK_THROWS_AS(render_density_map(SceneGraph{}, 0.0), ValidationError);
  }

  TEST_CASE("AFDM layout: magic, little-endian dims, f32 values") {
    test::TempDir dir("afdm");
    SceneGraph s;
    s.width = 7;
    s.height = 5;
    s.objects.push_back(house_at({3.5, 2.5}, 2));
    const auto m = render_density_map(s, 1.0);
    write_density_map(dir / "m.afdm", m);
    const std::string bytes = test::read_file(dir / "m.afdm");
    REQUIRE(bytes.size() == 4 + 4 + 4 + 7 * 5 * 4);
    CHECK(bytes.substr(0, 4) == "AFDM");
    CHECK(bytes.substr(4, 4) == std::string("\x07\x00\x00\x00", 4));
    CHECK(bytes.substr(8, 4) == std::string("\x05\x00\x00\x00", 4));
    float first = 0;
    std::memcpy(&first, bytes.data() + 12, 4);
    CHECK(first == static_cast<float>(m.values[0]));
    const auto back = read_density_map(dir / "m.afdm");
    CHECK(back.width == 7);
    CHECK(back.height == 5);
    for (std::size_t i = 0; i < m.values.size(); ++i) CHECK(back.values[i] == doctest::Approx(m.values[i]).epsilon(1e-6));
    test::write_file(dir / "bad.afdm", "AFDX");
    CHECK_THROWS(read_density_map(dir / "bad.afdm"));
  }
}
