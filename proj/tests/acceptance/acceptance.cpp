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

// Acceptance suite: one PASS/FAIL line per primary criterion. The exit status is nonzero
// when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aeroforge/config.hpp"
#include "aeroforge/dataset.hpp"
#include "aeroforge/evaluator.hpp"
#include "aeroforge/groundtruth.hpp"
#include "aeroforge/manifest.hpp"
#include "aeroforge/raster.hpp"
#include "aeroforge/scene.hpp"
#include "support.hpp"

using namespace aeroforge;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int cli(const std::vector<std::string>& args, std::string* err = nullptr) {
  static test::TempDir scratch("acc-io");
  std::string cmd = std::string("'") + AEROFORGE_CLI + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " >/dev/null 2>'" + (scratch / "err.txt").string() + "'";
  const int status = std::system(cmd.c_str());
  if (err) *err = test::read_file(scratch / "err.txt");
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> tree_without_timestamps(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::string bytes = test::read_file(e.path());
    if (e.path().filename() == "manifest.jsonl") {
      const auto at = bytes.find("\"created\":");
      if (at != std::string::npos) bytes.erase(at, bytes.find(',', at) - at);
    }
    files[fs::relative(e.path(), root).string()] = std::move(bytes);
  }
  return files;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void determinism(Outcome& o) {
  test::TempDir dir("acc-det");
  const auto t0 = std::chrono::steady_clock::now();
  auto gen = [&](const std::string& out, const std::string& threads) {
    return cli({"--threads", threads, "generate", "--count", "500", "--seed", "1", "--out", (dir / out).string()});
  };
  o.require(gen("run1", "1") == 0, "first run failed");
  const double first_run = seconds_since(t0);
  o.require(gen("run2", "1") == 0, "second run failed");
  o.require(gen("run8", "8") == 0, "8-thread run failed");
  const auto a = tree_without_timestamps(dir / "run1");
  o.require(a.size() == 501, "expected 500 images + manifest");
  o.require(a == tree_without_timestamps(dir / "run2"), "repeat run differs");
  o.require(a == tree_without_timestamps(dir / "run8"), "--threads 8 differs from --threads 1");
  o.require(first_run < 60.0, "500 images took longer than 60 s");
  o.detail << a.size() << " files byte-identical across 3 runs (threads 1,1,8); one run " << first_run << " s";
}

void scale(Outcome& o) {
  test::TempDir dir("acc-scale");
  const auto t0 = std::chrono::steady_clock::now();
  std::string err;
  const int fire_rc = cli({"generate", "--scenario", "fire_classification", "--balanced", "--count", "2000", "--seed", "1",
                           "--out", (dir / "fire").string()},
                          &err);
  o.require(fire_rc == 0, "fire generation exit " + std::to_string(fire_rc) + ": " + err);
  const int count_rc =
      cli({"generate", "--scenario", "house_counting", "--count", "10000", "--seed", "1", "--out", (dir / "count").string()}, &err);
  o.require(count_rc == 0, "counting generation exit " + std::to_string(count_rc) + ": " + err);
  const double elapsed = seconds_since(t0);
  if (fire_rc != 0 || count_rc != 0) return;

  const auto fire = read_manifest(dir / "fire/manifest.jsonl");
  std::size_t n_fire = 0, n_forest = 0;
  for (const auto& r : fire.rows) (r.ground_truth.class_label == ClassLabel::Fire ? n_fire : n_forest)++;
  o.require(fire.rows.size() == 2000 && n_fire == 1000 && n_forest == 1000, "fire set is not exactly 1000/1000");

  const auto counting = read_manifest(dir / "count/manifest.jsonl");
  std::vector<std::size_t> bins(39);
  bool in_range = counting.rows.size() == 10000;
  for (const auto& r : counting.rows) {
    const auto c = r.ground_truth.house_count.value_or(-1);
    in_range = in_range && c >= 0 && c <= 38;
    if (c >= 0 && c <= 38) ++bins[static_cast<std::size_t>(c)];
  }
  o.require(in_range, "counting label outside [0,38]");
  double worst = 0;
  for (auto b : bins) worst = std::max(worst, std::abs(static_cast<double>(b) / 10000.0 - 1.0 / 39.0));
  o.require(worst <= 0.015, "count histogram bin off by more than 1.5%");
  o.require(elapsed < 900.0, "runtime over 15 min");
  o.detail << "fire " << n_fire << "/" << n_forest << ", 10000 counting labels in [0,38], max histogram deviation "
           << worst * 100 << "%, " << elapsed << " s total, no PlacementExhausted";
}

void metric_oracles(Outcome& o) {
  RngStream rng(2718);
  double worst_rel = 0;
  auto rel = [](double got, double want) { return want == 0 ? std::abs(got) : std::abs(got - want) / std::abs(want); };
  for (int set = 0; set < 100; ++set) {
    const std::size_t n = 1 + rng.below(40);
    DatasetManifest counts, classes;
    PredictionSet count_preds, class_preds;
    long double se = 0, ae = 0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string id = "s" + std::to_string(i);
      ManifestRow row;
      row.image_id = id;
      row.ground_truth.house_count = rng.uniform_int(0, 38);
      counts.rows.push_back(row);
      const double p = rng.uniform01() < 0.2 ? static_cast<double>(*row.ground_truth.house_count) : rng.uniform_real(0, 45);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", p);
      count_preds.push_back({id, buf});
      const long double d = static_cast<long double>(std::strtod(buf, nullptr)) - *row.ground_truth.house_count;
      se += d * d;
      ae += std::fabs(d);

      ManifestRow crow;
      crow.image_id = id;
      crow.ground_truth.class_label = rng.bernoulli(0.5) ? ClassLabel::Fire : ClassLabel::Forest;
      classes.rows.push_back(crow);
      const bool fire_pred = rng.bernoulli(0.5);
      class_preds.push_back({id, fire_pred ? "fire" : "forest"});
      correct += fire_pred == (crow.ground_truth.class_label == ClassLabel::Fire);
    }
    const auto cm = evaluate_counting(count_preds, counts);
    const auto ca = evaluate_classification(class_preds, classes);
    worst_rel = std::max({worst_rel, rel(cm.counting.mse, static_cast<double>(se / n)), rel(cm.counting.mae, static_cast<double>(ae / n)),
                          rel(ca.accuracy, static_cast<double>(correct) / static_cast<double>(n))});
  }
  o.require(worst_rel <= 1e-12, "relative error above 1e-12");

  DatasetManifest m;
  PredictionSet p;
  for (int i = 0; i < 5; ++i) {
    ManifestRow row;
    row.image_id = "r" + std::to_string(i);
    row.ground_truth.house_count = 10;
    m.rows.push_back(row);
    p.push_back({row.image_id, i % 2 ? "6" : "14"});  // every squared residual is 16 or 16; adjust below
  }
  p[0].value = "14.472135954999580";  // sqrt(20) + 10
  p[1].value = "5.527864045000420";   // 10 - sqrt(20)
  p[2].value = p[0].value;
  p[3].value = p[1].value;
  p[4].value = p[0].value;
  const auto r = evaluate_counting(p, m);
  o.require(std::abs(r.counting.mse - 20.0) < 1e-9, "constructed MSE is not 20");
  o.require(std::abs(r.counting.rmse - 4.472) <= 1e-3, "RMSE for MSE 20 is not 4.472 +- 1e-3");
  o.detail << "100 random sets, worst relative error " << worst_rel << "; MSE " << r.counting.mse << " -> RMSE "
           << r.counting.rmse;
}

void density_integral(Outcome& o) {
  const auto config = default_config(Scenario::HouseCounting);
  double worst_excess = -1e300;
  std::int64_t total_houses = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto scene = sample_scene(config, derive_image_seed(4242, i));
    const auto map = render_density_map(scene, config.density_sigma);
    const double count = static_cast<double>(scene.sampled_house_count);
    total_houses += scene.sampled_house_count;
    const double excess = std::abs(map.total() - count) - (1e-3 * count + 1e-6);
    worst_excess = std::max(worst_excess, excess);
  }
  o.require(worst_excess <= 0, "integral outside 1e-3*count + 1e-6");
  o.detail << "1000 scenes, " << total_houses << " houses, worst |integral - count| - tolerance = " << worst_excess;
}

void augmentation_safety(Outcome& o) {
  const auto counting = default_config(Scenario::HouseCounting);
  const auto fire = default_config(Scenario::FireClassification);
  const AugmentOp ops[] = {AugmentOp::HFlip, AugmentOp::VFlip, AugmentOp::Rot90, AugmentOp::Rot180, AugmentOp::Rot270};
  std::size_t pairs = 0, flips_checked = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const bool is_fire = i % 2 == 1;
    const auto& config = is_fire ? fire : counting;
    const auto scene = sample_scene(config, derive_image_seed(777, i));
    const auto gt = derive_ground_truth(scene, "x");
    const auto raster = render_scene(scene, config);
    const auto density = is_fire ? DensityMap{} : render_density_map(scene, config.density_sigma);
    for (auto op : ops) {
      const auto t = transform_ground_truth(gt, op, scene.width, scene.height);
      o.require(t.house_count == gt.house_count && t.class_label == gt.class_label, "label changed");
      o.require(t.boxes->size() == gt.boxes->size(), "box count changed");
      o.require(check_ground_truth(t, config.scenario, scene.width, scene.height).empty(), "transformed ground truth invalid");
      if (!is_fire) {
        const auto td = transform_density(density, op);
        o.require(std::abs(td.total() - density.total()) <= 1e-9, "density mass changed");
      }
      ++pairs;
    }
    for (auto op : {AugmentOp::HFlip, AugmentOp::VFlip}) {
      o.require(transform_raster(transform_raster(raster, op), op) == raster, "double flip is not bitwise identity");
      ++flips_checked;
    }
  }
  o.detail << pairs << " (scene, op) pairs kept labels; " << flips_checked << " double flips bitwise identical";
}

void validation_faults(Outcome& o) {
  test::TempDir dir("acc-val");
  const fs::path base = dir / "base";
  o.require(cli({"generate", "--count", "8", "--seed", "3", "--out", base.string()}) == 0, "generation failed");
  o.require(cli({"validate", "--manifest", (base / "manifest.jsonl").string()}) == 0, "pristine manifest rejected");

  const auto pristine = read_manifest(base / "manifest.jsonl");
  struct Fault {
    std::string name, expect;
    std::function<void(DatasetManifest&, const fs::path&)> apply;
  };
  const std::vector<Fault> faults = {
      {"missing file", "missing file", [](DatasetManifest&, const fs::path& d) { fs::remove(d / "images/img_000004.png"); }},
      {"duplicate id", "duplicate image_id", [](DatasetManifest& m, const fs::path&) { m.rows.push_back(m.rows[2]); }},
      {"out-of-range count", "out of range",
       [](DatasetManifest& m, const fs::path&) { m.rows[5].ground_truth.house_count = 40; }},
  };
  std::size_t caught = 0;
  for (const auto& f : faults) {
    const fs::path copy = dir / ("fault-" + std::to_string(caught));
    fs::copy(base, copy, fs::copy_options::recursive);
    auto m = pristine;
    f.apply(m, copy);
    write_manifest(copy / "manifest.jsonl", m);
    std::string err;
    const int rc = cli({"validate", "--manifest", (copy / "manifest.jsonl").string(), "--format", "json"}, &err);
    const auto report = validate_manifest(copy / "manifest.jsonl");
    bool named = false;
    for (const auto& v : report.violations) named = named || v.message.find(f.expect) != std::string::npos;
    o.require(rc == 1, f.name + ": exit code " + std::to_string(rc));
    o.require(named, f.name + ": violation not reported");
    caught += rc == 1 && named;
  }
  o.detail << caught << "/" << faults.size() << " fault classes caught with exit code 1";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Outcome&)>> criteria = {
      {"determinism", determinism},
      {"scale-parity", scale},
      {"metric-oracles", metric_oracles},
      {"density-integral", density_integral},
      {"augmentation-safety", augmentation_safety},
      {"validation-faults", validation_faults},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
