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

#include "aeroforge/groundtruth.hpp"
#include "aeroforge/types.hpp"

namespace aeroforge {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kManifestFormat = 1;

enum class Split { Train, Val, Test, External };

std::string_view to_string(Split s) noexcept;
std::optional<Split> split_from_string(std::string_view s) noexcept;

struct ManifestHeader {
  std::string config_hash;
  std::uint64_t master_seed = 0;
  Scenario scenario = Scenario::HouseCounting;
  std::string tool_version = kToolVersion;
  std::string detail_version;
  std::string created;  // ISO-8601 UTC; the only field that varies between identical runs
  int image_width = 100;
  int image_height = 100;
  int max_count = 38;

  bool operator==(const ManifestHeader&) const = default;
};

struct ManifestRow {
  std::string image_id;
  std::string path;  // relative to the manifest's directory
  std::optional<std::uint64_t> image_seed;  // absent for external photos
  Split split = Split::Train;
  GroundTruth ground_truth;
  std::string detail_version;
  std::optional<std::string> augmented_from;
  std::optional<std::string> augment_op;

  bool operator==(const ManifestRow&) const = default;
};

struct DatasetManifest {
  ManifestHeader header;
  std::vector<ManifestRow> rows;

  const ManifestRow* find(const std::string& image_id) const noexcept;
};

nlohmann::json header_to_json(const ManifestHeader& h);
nlohmann::json row_to_json(const ManifestRow& r);
std::string manifest_to_jsonl(const DatasetManifest& m);

// Parsing that keeps going after bad rows so every problem can be reported.
struct ManifestParse {
  DatasetManifest manifest;
  std::vector<std::string> problems;  // "line N: ..." entries
};
ManifestParse parse_manifest_text(const std::string& text);

// Throws IoError when unreadable, ValidationError listing every malformed line.
DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
// Spreadsheet export: image_id,path,split,image_seed,class_label,house_count,detail_version,augmented_from
void export_manifest_csv(const std::filesystem::path& path, const DatasetManifest& manifest);

// Current UTC time, or SOURCE_DATE_EPOCH when set, formatted as YYYY-MM-DDTHH:MM:SSZ.
std::string creation_timestamp();

}  // namespace aeroforge
