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
#include <map>
#include <set>

#include "aeroforge/config.hpp"
#include "aeroforge/dataset.hpp"
#include "aeroforge/errors.hpp"
#include "aeroforge/image_io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aeroforge;
using D = DistributionSpec;
namespace fs = std::filesystem;

namespace {

GenerateOptions opts(const fs::path& out, std::size_t n, unsigned threads = 1) {
  GenerateOptions o;
  o.count = n;
  o.out_dir = out;
  o.threads = threads;
  o.created = "2026-01-01T00:00:00Z";
  return o;
}

// Manifest rows only; no files behind them.
DatasetManifest synthetic(Scenario scenario, std::size_t n) {
  DatasetManifest m;
  m.header.scenario = scenario;
  m.header.config_hash = std::string(64, '0');
  m.header.detail_version = "v1";
  for (std::size_t i = 0; i < n; ++i) {
    ManifestRow r;
    r.image_id = image_id_for(i, n);
    r.path = "images/" + r.image_id + ".png";
    r.image_seed = i;
    r.detail_version = "v1";
    r.ground_truth.image_id = r.image_id;
    if (scenario == Scenario::FireClassification) r.ground_truth.class_label = i % 2 ? ClassLabel::Fire : ClassLabel::Forest;
    else r.ground_truth.house_count = static_cast<std::int64_t>(i % 39);
    m.rows.push_back(r);
  }
  return m;
}

std::map<std::string, std::size_t> split_sizes(const DatasetManifest& m) {
  std::map<std::string, std::size_t> s;
  for (const auto& r : m.rows) ++s[std::string(to_string(r.split))];
  return s;
}

bool has_violation(const ValidationReport& r, const std::string& row, const std::string& text) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
    return v.row == row && v.message.find(text) != std::string::npos;
  });
}

std::string without_created(std::string manifest_text) {
  const auto at = manifest_text.find("\"created\":");
  if (at != std::string::npos) manifest_text.erase(at, manifest_text.find(',', at) - at);
  return manifest_text;
}

}  // namespace

TEST_SUITE("dataset") {
  TEST_CASE("image ids are zero padded to at least six digits") {
    CHECK(image_id_for(0, 1) == "img_000000");
    CHECK(image_id_for(42, 500) == "img_000042");
    CHECK(image_id_for(5, 10000000) == "img_0000005");
  }

  TEST_CASE("balanced quota is exact and deterministic") {
    const auto a = balanced_fire_assignment(1, 2000, 0.5);
    CHECK(std::count(a.begin(), a.end(), true) == 1000);
    CHECK(a == balanced_fire_assignment(1, 2000, 0.5));
    CHECK(a != balanced_fire_assignment(2, 2000, 0.5));
    const auto b = balanced_fire_assignment(1, 1001, 0.3);
    CHECK(std::count(b.begin(), b.end(), true) == 300);
  }

  TEST_CASE("n = 1 twice -> byte-identical image and manifest row") {
    test::TempDir a("gen"), b("gen");
    const auto c = default_config(Scenario::HouseCounting);
    auto oa = opts(a / "d", 1), ob = opts(b / "d", 1);
    ob.created = "2030-05-05T05:05:05Z";
    const auto ma = generate_dataset(c, oa), mb = generate_dataset(c, ob);
    CHECK(ma.rows == mb.rows);
    CHECK(test::read_file(a / "d/images/img_000000.png") == test::read_file(b / "d/images/img_000000.png"));
    CHECK(without_created(test::read_file(a / "d/manifest.jsonl")) == without_created(test::read_file(b / "d/manifest.jsonl")));
  }

  TEST_CASE("thread count never changes the output") {
    test::TempDir a("gen"), b("gen");
    const auto c = default_config(Scenario::FireClassification);
    auto oa = opts(a / "d", 24, 1), ob = opts(b / "d", 24, 4);
    oa.balanced = ob.balanced = true;
    generate_dataset(c, oa);
    generate_dataset(c, ob);
    CHECK(test::read_file(a / "d/manifest.jsonl") == test::read_file(b / "d/manifest.jsonl"));
    for (const auto& e : fs::directory_iterator(a / "d/images"))
      REQUIRE(test::read_file(e.path()) == test::read_file(b / ("d/images/" + e.path().filename().string())));
  }

  TEST_CASE("counting dataset with density maps validates and integrates to the counts") {
    test::TempDir dir("gen");
    auto o = opts(dir / "d", 12);
    o.density = true;
    const auto m = generate_dataset(default_config(Scenario::HouseCounting), o);
    REQUIRE(m.rows.size() == 12);
    for (const auto& r : m.rows) {
      REQUIRE(r.ground_truth.density_ref.has_value());
      const auto dm = read_density_map(dir / ("d/" + *r.ground_truth.density_ref));
      CHECK(std::abs(dm.total() - static_cast<double>(*r.ground_truth.house_count)) <= 1e-3 * *r.ground_truth.house_count + 1e-4);
      CHECK(r.image_seed == derive_image_seed(1, std::stoull(r.image_id.substr(4))));
    }
    const auto report = validate_manifest(dir / "d/manifest.jsonl");
    CHECK(report.ok());
    CHECK(report.rows_checked == 12);
    CHECK(m.header.config_hash == config_hash(default_config(Scenario::HouseCounting)));
  }

  TEST_CASE("output directory must be absent or empty") {
    test::TempDir dir("gen");
    test::write_file(dir / "junk.txt", "x");
    CHECK_THROWS_AS(generate_dataset(default_config(Scenario::HouseCounting), opts(dir.path(), 2)), IoError);
    CHECK(fs::exists(dir / "junk.txt"));
  }

  TEST_CASE("placement failure names the image and removes partial output") {
    test::TempDir dir("gen");
    auto c = default_config(Scenario::HouseCounting);
    c.count_distribution = D::uniform_int(30, 38);
    for (auto& s : c.object_specs)
      if (s.object_class == ObjectClass::House) s.width = s.height = D::constant(30);
    try {
      generate_dataset(c, opts(dir / "d", 6, 3));
      FAIL("expected ImagePlacementExhausted");
    } catch (const ImagePlacementExhausted& e) {
      CHECK(e.image_index() == 0);
      CHECK(e.image_seed() == derive_image_seed(c.master_seed, 0));
      CHECK(std::string(e.what()).find(std::to_string(e.image_seed())) != std::string::npos);
    }
    CHECK_FALSE(fs::exists(dir / "d"));
  }

  TEST_CASE("n = 10000, UniformInt[0,38]: each count bin within 1.5% absolute of 1/39") {
    // Binomial sd of one bin: sqrt(p(1-p)/n) = 0.00156, so 1.5% is a ~9.6 sigma bound.
    GeneratorConfig c = default_config(Scenario::HouseCounting);
    std::erase_if(c.object_specs, [](const ObjectClassSpec& s) { return s.object_class != ObjectClass::House; });
    std::vector<int> bins(39);
    for (std::uint64_t i = 0; i < 10000; ++i) ++bins.at(sample_scene(c, derive_image_seed(1, i)).sampled_house_count);
    for (int k = 0; k < 39; ++k) CHECK(std::abs(bins[k] / 10000.0 - 1.0 / 39) <= 0.015);
  }

  TEST_CASE("split: 2000 rows at 0.2 -> 1600 train / 400 val, 200 per class") {
    const auto m = synthetic(Scenario::FireClassification, 2000);
    const auto s = split_dataset(m, 0.2, 7);
    CHECK(split_sizes(s) == std::map<std::string, std::size_t>{{"train", 1600}, {"val", 400}});
    std::size_t fire_val = 0, forest_val = 0;
    for (const auto& r : s.rows)
      if (r.split == Split::Val) (r.ground_truth.class_label == ClassLabel::Fire ? fire_val : forest_val)++;
    CHECK(fire_val == 200);
    CHECK(forest_val == 200);
    CHECK(split_dataset(m, 0.2, 7).rows == s.rows);
    CHECK(split_dataset(m, 0.2, 8).rows != s.rows);
  }

  TEST_CASE("split: counting strata keep the val count distribution close to the whole") {
    const auto s = split_dataset(synthetic(Scenario::HouseCounting, 1000), 0.25, 3);
    double mean_val = 0;
    std::size_t n_val = 0;
    for (const auto& r : s.rows)
      if (r.split == Split::Val) {
        mean_val += static_cast<double>(*r.ground_truth.house_count);
        ++n_val;
      }
    CHECK(n_val == 250);
    CHECK(std::abs(mean_val / n_val - 18.95) < 1.0);
  }

  TEST_CASE("split: external and test rows are untouched, augmented rows follow their parent") {
    auto m = synthetic(Scenario::FireClassification, 40);
    m.rows[0].split = Split::External;
    m.rows[1].split = Split::Test;
    ManifestRow aug = m.rows[5];
    aug.image_id += "_aug1_hflip";
    aug.augmented_from = m.rows[5].image_id;
    m.rows.push_back(aug);
    for (double frac : {0.0, 0.5, 1.0}) {
      const auto s = split_dataset(m, frac, 1);
      CHECK(s.rows[0].split == Split::External);
      CHECK(s.rows[1].split == Split::Test);
      CHECK(s.rows.back().split == s.rows[5].split);
    }
    CHECK_THROWS_AS(split_dataset(m, 1.5, 1), ValidationError);
  }

  TEST_CASE("rot90 of box (10,20,30,40) in 100x100 -> (20,70,40,90)") {
    CHECK(transform_box({10, 20, 30, 40}, AugmentOp::Rot90, 100, 100) == Box{20, 70, 40, 90});
  }

  TEST_CASE("box transforms agree with transforming the corner points") {
    // Independent oracle: continuous point maps, then the bounding box of the mapped corners.
    auto map_point = [](Point p, AugmentOp op, double w, double h) -> Point {
      switch (op) {
        case AugmentOp::HFlip: return {w - p.x, p.y};
        case AugmentOp::VFlip: return {p.x, h - p.y};
        case AugmentOp::Rot90: return {p.y, w - p.x};
        case AugmentOp::Rot180: return {w - p.x, h - p.y};
        case AugmentOp::Rot270: return {h - p.y, p.x};
      }
      return p;
    };
    RngStream rng(1);
    for (auto op : {AugmentOp::HFlip, AugmentOp::VFlip, AugmentOp::Rot90, AugmentOp::Rot180, AugmentOp::Rot270})
      for (int i = 0; i < 100; ++i) {
        const double x0 = rng.uniform_real(0, 50), y0 = rng.uniform_real(0, 50);
        const Box b{x0, y0, x0 + rng.uniform_real(1, 50), y0 + rng.uniform_real(1, 50)};
        const Box t = transform_box(b, op, 100, 100);
        const Polygon corners = {map_point({b.x_min, b.y_min}, op, 100, 100), map_point({b.x_max, b.y_min}, op, 100, 100),
                                 map_point({b.x_max, b.y_max}, op, 100, 100), map_point({b.x_min, b.y_max}, op, 100, 100)};
        const Box oracle = bounding_box(corners);
        REQUIRE(t.x_min == doctest::Approx(oracle.x_min));
        REQUIRE(t.y_min == doctest::Approx(oracle.y_min));
        REQUIRE(t.x_max == doctest::Approx(oracle.x_max));
        REQUIRE(t.y_max == doctest::Approx(oracle.y_max));
      }
  }

  TEST_CASE("double flips and full rotations are bitwise identities") {
    RngStream rng(2);
    const Raster r = procedural_background(31, 31, {100, 100, 100}, 90, rng);
    CHECK(transform_raster(transform_raster(r, AugmentOp::HFlip), AugmentOp::HFlip) == r);
    CHECK(transform_raster(transform_raster(r, AugmentOp::VFlip), AugmentOp::VFlip) == r);
    CHECK(transform_raster(transform_raster(r, AugmentOp::Rot90), AugmentOp::Rot270) == r);
    CHECK(transform_raster(transform_raster(r, AugmentOp::Rot180), AugmentOp::Rot180) == r);
    Raster q = r;
    for (int i = 0; i < 4; ++i) q = transform_raster(q, AugmentOp::Rot90);
    CHECK(q == r);
    CHECK(transform_raster(transform_raster(r, AugmentOp::HFlip), AugmentOp::VFlip) == transform_raster(r, AugmentOp::Rot180));
  }

  TEST_CASE("rot90 pixel mapping matches the box mapping") {
    Raster r(10, 10);
    r.set(2, 3, {255, 0, 0});
    const Raster t = transform_raster(r, AugmentOp::Rot90);
    const Box b = transform_box({2, 3, 3, 4}, AugmentOp::Rot90, 10, 10);
    CHECK(t.at(static_cast<int>(b.x_min), static_cast<int>(b.y_min)) == Rgb{255, 0, 0});
  }

  TEST_CASE("hflip keeps house_count and labels; density mass is preserved") {
    const auto c = default_config(Scenario::HouseCounting);
    const auto scene = sample_scene(c, 17);
    const auto gt = derive_ground_truth(scene, "x");
    for (auto op : {AugmentOp::HFlip, AugmentOp::Rot90}) {
      const auto t = transform_ground_truth(gt, op, 100, 100);
      CHECK(t.house_count == gt.house_count);
      CHECK(t.boxes->size() == gt.boxes->size());
      CHECK(check_ground_truth(t, Scenario::HouseCounting, 100, 100).empty());
      const auto dm = render_density_map(scene, 3.0);
      CHECK(transform_density(dm, op).total() == doctest::Approx(dm.total()));
    }
  }

  TEST_CASE("parse_augmentation rejects ops outside the permitted set") {
    CHECK(parse_augmentation("hflip,rot90", 3).ops == std::vector<AugmentOp>{AugmentOp::HFlip, AugmentOp::Rot90});
    try {
      parse_augmentation("hflip,shear", 2);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("shear") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_augmentation("", 2), ValidationError);
    CHECK_THROWS_AS(parse_augmentation("vflip", 0), ValidationError);
  }

  TEST_CASE("augment_dataset: cycled ops, inherited split, valid output") {
    test::TempDir dir("aug");
    auto o = opts(dir / "d", 10);
    o.density = true;
    const auto gen = generate_dataset(default_config(Scenario::HouseCounting), o);
    const auto split = split_dataset(gen, 0.2, 1);
    const auto spec = parse_augmentation("hflip,vflip,rot90", 3);
    const auto out = augment_dataset(split, dir / "d", spec);
    CHECK(out.rows.size() == 10 + 8 * 2);
    std::map<std::string, std::size_t> ops;
    for (const auto& r : out.rows) {
      if (!r.augmented_from) continue;
      const ManifestRow* parent = out.find(*r.augmented_from);
      REQUIRE(parent != nullptr);
      CHECK(parent->split == Split::Train);
      CHECK(r.split == parent->split);
      CHECK(r.ground_truth.house_count == parent->ground_truth.house_count);
      CHECK(r.image_id.find(*r.augmented_from + "_aug") == 0);
      ++ops[*r.augment_op];
    }
    CHECK(ops == std::map<std::string, std::size_t>{{"hflip", 5}, {"rot90", 5}, {"vflip", 6}});
    write_manifest(dir / "d/manifest.jsonl", out);
    CHECK(validate_manifest(dir / "d/manifest.jsonl").ok());
    CHECK_THROWS_AS(augment_dataset(out, dir / "d", spec), ValidationError);  // ids already exist
  }

  TEST_CASE("rot90 requires square images") {
    auto m = synthetic(Scenario::HouseCounting, 2);
    m.header.image_width = 120;
    CHECK_THROWS_AS(augment_dataset(m, ".", parse_augmentation("rot90", 2)), ValidationError);
  }

  TEST_CASE("validate: pristine, missing file, out-of-range count, duplicate id") {
    test::TempDir dir("val");
    const auto m = generate_dataset(default_config(Scenario::HouseCounting), opts(dir / "d", 6));
    const fs::path mf = dir / "d/manifest.jsonl";
    CHECK(validate_manifest(mf).violations.empty());

    fs::remove(dir / "d/images/img_000002.png");
    auto report = validate_manifest(mf);
    CHECK(has_violation(report, "img_000002", "missing file"));

    auto edited = m;
    edited.rows[3].ground_truth.house_count = 40;
    edited.rows.push_back(edited.rows[4]);
    write_manifest(mf, edited);
    report = validate_manifest(mf);
    CHECK(has_violation(report, "img_000003", "out of range"));
    CHECK(has_violation(report, "img_000004", "duplicate image_id"));
    CHECK_FALSE(report.ok());
    CHECK(report.to_json()["violation_count"] == report.violations.size());
    CHECK_THROWS_AS(validate_manifest(dir / "nope.jsonl"), IoError);
  }

  TEST_CASE("validate: image dimension mismatch") {
    test::TempDir dir("val");
    generate_dataset(default_config(Scenario::HouseCounting), opts(dir / "d", 2));
    write_png(dir / "d/images/img_000001.png", Raster(64, 100));
    CHECK(has_violation(validate_manifest(dir / "d/manifest.jsonl"), "img_000001", "expected 100x100"));
  }

  TEST_CASE("stats: balanced 50/50, constant count histogram, per-lineage breakdown") {
    const auto fire = dataset_stats(synthetic(Scenario::FireClassification, 2000));
    CHECK(fire.fire == 1000);
    CHECK(fire.forest == 1000);
    CHECK(fire.to_json()["fire_fraction"] == 0.5);
    CHECK(fire.to_text().find("fire 1000 (50.00%), forest 1000 (50.00%)") != std::string::npos);

    auto constant = synthetic(Scenario::HouseCounting, 30);
    for (auto& r : constant.rows) r.ground_truth.house_count = 5;
    const auto cs = dataset_stats(constant);
    CHECK(cs.count_histogram == std::map<std::int64_t, std::size_t>{{5, 30}});
    CHECK(cs.mean_count == 5.0);

    auto mixed = synthetic(Scenario::HouseCounting, 30);
    for (std::size_t i = 0; i < 10; ++i) {
      mixed.rows[i].detail_version = "v2";
      mixed.rows[i].ground_truth.house_count = 10;
    }
    const auto ms = dataset_stats(mixed);
    REQUIRE(ms.lineages.size() == 2);
    CHECK(ms.lineages.at("v1").rows == 20);
    CHECK(ms.lineages.at("v2").rows == 10);
    CHECK(ms.lineages.at("v2").mean_count == 10.0);
    CHECK(ms.to_text().find("v2: 10 rows") != std::string::npos);
  }
}
