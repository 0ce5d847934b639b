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
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "aeroforge/config.hpp"
#include "aeroforge/dataset.hpp"
#include "aeroforge/errors.hpp"
#include "aeroforge/groundtruth.hpp"
#include "aeroforge/image_io.hpp"
#include "aeroforge/scene.hpp"

namespace aeroforge {

namespace fs = std::filesystem;

std::string image_id_for(std::size_t index, std::size_t count) {
  std::size_t digits = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++digits;
  std::string num = std::to_string(index);
  const std::size_t width = std::max<std::size_t>(6, digits);
  if (num.size() < width) num.insert(0, width - num.size(), '0');
  return "img_" + num;
}

std::vector<bool> balanced_fire_assignment(std::uint64_t master_seed, std::size_t count, double fire_probability) {
  const auto fires = static_cast<std::size_t>(std::floor(fire_probability * static_cast<double>(count)));
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  RngStream rng = RngStream(master_seed).fork(StreamTag::Balance);
  for (std::size_t i = count; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<bool> fire(count, false);
  for (std::size_t i = 0; i < std::min(fires, count); ++i) fire[order[i]] = true;
  return fire;
}

namespace {

// Removes what a failed run created; leaves pre-existing (empty) out_dir alone.
class OutputGuard {
 public:
  OutputGuard(fs::path out_dir, bool created_dir) : out_(std::move(out_dir)), created_dir_(created_dir) {}
  ~OutputGuard() {
    if (committed_) return;
    std::error_code ec;
    if (created_dir_) {
      fs::remove_all(out_, ec);
    } else {
      fs::remove_all(out_ / "images", ec);
      fs::remove_all(out_ / "density", ec);
      fs::remove(out_ / "manifest.jsonl", ec);
      fs::remove(out_ / "manifest.jsonl.tmp", ec);
    }
  }
  void commit() { committed_ = true; }

 private:
  fs::path out_;
  bool created_dir_;
  bool committed_ = false;
};

}  // namespace

DatasetManifest generate_dataset(const GeneratorConfig& config, const GenerateOptions& options) {
  require_valid(config);
  if (options.count < 1) throw ValidationError({"count: must be >= 1"});
  if (options.out_dir.empty()) throw ValidationError({"out_dir: must be given"});

  std::vector<fs::path> photos;
  if (config.background.mode == BackgroundSpec::Mode::Hybrid) photos = list_background_photos(config.background.directory);

  std::error_code ec;
  bool created_dir = false;
  if (fs::exists(options.out_dir, ec)) {
    if (!fs::is_directory(options.out_dir, ec)) throw IoError("'" + options.out_dir.string() + "' is not a directory");
    if (!fs::is_empty(options.out_dir, ec)) throw IoError("output directory '" + options.out_dir.string() + "' is not empty");
  } else {
    fs::create_directories(options.out_dir, ec);
    if (ec) throw IoError("cannot create '" + options.out_dir.string() + "': " + ec.message());
    created_dir = true;
  }
  OutputGuard guard(options.out_dir, created_dir);
  fs::create_directories(options.out_dir / "images", ec);
  if (!ec && options.density) fs::create_directories(options.out_dir / "density", ec);
  if (ec) throw IoError("cannot create output subdirectories: " + ec.message());

  const std::size_t n = options.count;
  std::vector<bool> fire_quota;
  if (options.balanced && config.scenario == Scenario::FireClassification)
    fire_quota = balanced_fire_assignment(config.master_seed, n, config.fire_probability);

  DatasetManifest manifest;
  manifest.header.config_hash = config_hash(config);
  manifest.header.master_seed = config.master_seed;
  manifest.header.scenario = config.scenario;
  manifest.header.detail_version = config.detail_version;
  manifest.header.created = options.created.value_or(creation_timestamp());
  manifest.header.image_width = config.image_width;
  manifest.header.image_height = config.image_height;
  manifest.header.max_count = config.max_count;

  std::vector<std::optional<ManifestRow>> rows(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex error_mutex;
  std::size_t error_index = n;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      if (abort.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      const std::uint64_t seed = derive_image_seed(config.master_seed, i);
      try {
        ManifestRow row;
        row.image_id = image_id_for(i, n);
        row.path = "images/" + row.image_id + ".png";
        row.image_seed = seed;
        row.split = Split::Train;
        row.detail_version = config.detail_version;
        std::optional<bool> force;
        if (!fire_quota.empty()) force = fire_quota[i];
        SceneGraph scene;
        try {
          scene = sample_scene(config, seed, force);
        } catch (const PlacementExhausted& e) {
          throw ImagePlacementExhausted(e, i, seed);
        }
        const Raster raster = render_scene(scene, config, photos);
        row.ground_truth = derive_ground_truth(scene, row.image_id);
        write_png(options.out_dir / row.path, raster);
        if (options.density && config.scenario == Scenario::HouseCounting) {
          const std::string ref = "density/" + row.image_id + ".afdm";
          write_density_map(options.out_dir / ref, render_density_map(scene, config.density_sigma));
          row.ground_truth.density_ref = ref;
        }
        rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        abort.store(true, std::memory_order_relaxed);
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::min<std::size_t>(n, 256))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  manifest.rows.reserve(n);
  for (auto& r : rows) manifest.rows.push_back(std::move(*r));
  write_manifest(options.out_dir / "manifest.jsonl", manifest);
  guard.commit();
  return manifest;
}

}  // namespace aeroforge
