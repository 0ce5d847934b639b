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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aeroforge/manifest.hpp"
#include "aeroforge/raster.hpp"
#include "aeroforge/types.hpp"

namespace aeroforge {

struct GenerateOptions {
  std::size_t count = 1;
  std::filesystem::path out_dir;
  bool balanced = false;  // exact floor(count * fire_probability) fire images
  bool density = false;   // also write density/<id>.afdm
  unsigned threads = 1;
  std::optional<std::string> created;  // header timestamp override
};

std::string image_id_for(std::size_t index, std::size_t count);

// Indices (in [0, count)) that receive fire under balanced generation.
std::vector<bool> balanced_fire_assignment(std::uint64_t master_seed, std::size_t count, double fire_probability);

// Writes out_dir/images/*.png, optional out_dir/density/*.afdm and out_dir/manifest.jsonl.
// Output bytes do not depend on `threads`. out_dir must be absent or empty; on any failure
// everything this call created is removed. PlacementExhausted surfaces as
// ImagePlacementExhausted naming the lowest failing index.
DatasetManifest generate_dataset(const GeneratorConfig& config, const GenerateOptions& options);

// Deterministic stratified train/val assignment. Classification strata are class labels,
// counting strata are rank deciles of house_count. Only original train/val rows are
// reassigned; augmented rows then follow their parent.
DatasetManifest split_dataset(const DatasetManifest& manifest, double val_fraction, std::uint64_t split_seed);

enum class AugmentOp { HFlip, VFlip, Rot90, Rot180, Rot270 };

std::string_view to_string(AugmentOp op) noexcept;
std::optional<AugmentOp> augment_op_from_string(std::string_view s) noexcept;

struct AugmentationSpec {
  std::vector<AugmentOp> ops;
  int multiplier = 2;  // rows per train image after augmentation, original included
};

// Throws ValidationError naming the first op outside the permitted set.
AugmentationSpec parse_augmentation(const std::string& ops_csv, int multiplier);

Raster transform_raster(const Raster& src, AugmentOp op);
// Continuous pixel coordinates; rot90 maps (x, y) -> (y, W - x).
Box transform_box(const Box& b, AugmentOp op, int width, int height);
GroundTruth transform_ground_truth(const GroundTruth& gt, AugmentOp op, int width, int height);
DensityMap transform_density(const DensityMap& m, AugmentOp op);

// Adds (multiplier - 1) transformed copies of every non-augmented train row, writing images
// next to the manifest. Copy k of the parent at train ordinal p uses ops[(p + k - 1) % ops.size()].
DatasetManifest augment_dataset(const DatasetManifest& manifest, const std::filesystem::path& manifest_dir,
                                const AugmentationSpec& spec);

struct Violation {
  std::string row;  // image_id, or "line N" / "header"
  std::string message;
};

struct ValidationReport {
  std::size_t rows_checked = 0;
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Throws IoError only when the manifest itself cannot be read.
ValidationReport validate_manifest(const std::filesystem::path& manifest_path);

struct LineageStats {
  std::size_t rows = 0;
  std::size_t fire = 0, forest = 0;
  double mean_count = 0.0;
};

struct DatasetStats {
  Scenario scenario = Scenario::HouseCounting;
  std::string config_hash;
  std::string detail_version;
  std::size_t rows = 0;
  std::size_t augmented = 0;
  std::map<std::string, std::size_t> split_sizes;
  std::size_t fire = 0, forest = 0;
  std::map<std::int64_t, std::size_t> count_histogram;
  double mean_count = 0.0;
  std::map<std::string, LineageStats> lineages;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

DatasetStats dataset_stats(const DatasetManifest& manifest);

}  // namespace aeroforge
