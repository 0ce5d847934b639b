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
#include <numeric>
#include <set>

#include "aeroforge/dataset.hpp"
#include "aeroforge/errors.hpp"
#include "aeroforge/image_io.hpp"

namespace aeroforge {

namespace fs = std::filesystem;

DatasetManifest split_dataset(const DatasetManifest& manifest, double val_fraction, std::uint64_t split_seed) {
  if (!std::isfinite(val_fraction) || val_fraction < 0 || val_fraction > 1)
    throw ValidationError({"val_fraction: must lie in [0, 1]"});
  DatasetManifest out = manifest;

  // Eligible rows in image_id order, so the result does not depend on row order.
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const auto& r = out.rows[i];
    if (!r.augmented_from && (r.split == Split::Train || r.split == Split::Val)) eligible.push_back(i);
  }
  std::sort(eligible.begin(), eligible.end(),
            [&](std::size_t a, std::size_t b) { return out.rows[a].image_id < out.rows[b].image_id; });

  RngStream rng = RngStream(mix64(split_seed)).fork(StreamTag::Split);
  for (std::size_t i = eligible.size(); i > 1; --i) std::swap(eligible[i - 1], eligible[rng.below(i)]);

  // Strata keep shuffled order internally.
  std::map<int, std::vector<std::size_t>> strata;
  if (manifest.header.scenario == Scenario::FireClassification) {
    for (std::size_t idx : eligible) {
      const auto& gt = out.rows[idx].ground_truth;
      strata[gt.class_label ? static_cast<int>(*gt.class_label) : -1].push_back(idx);
    }
  } else {
    std::vector<std::size_t> ranked = eligible;
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      return out.rows[a].ground_truth.house_count.value_or(0) < out.rows[b].ground_truth.house_count.value_or(0);
    });
    std::map<std::size_t, int> decile;
    for (std::size_t rank = 0; rank < ranked.size(); ++rank)
      decile[ranked[rank]] = static_cast<int>(10 * rank / ranked.size());
    for (std::size_t idx : eligible) strata[decile[idx]].push_back(idx);
  }

  // Largest-remainder apportionment so the total is exactly round(fraction * n).
  const auto total_val = static_cast<std::size_t>(std::nearbyint(val_fraction * static_cast<double>(eligible.size())));
  struct Quota {
    int stratum;
    std::size_t base;
    double remainder;
  };
  std::vector<Quota> quotas;
  std::size_t assigned = 0;
  for (const auto& [key, members] : strata) {
    const double exact = val_fraction * static_cast<double>(members.size());
    const auto base = static_cast<std::size_t>(std::floor(exact));
    quotas.push_back({key, base, exact - static_cast<double>(base)});
    assigned += base;
  }
  std::vector<std::size_t> order(quotas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return quotas[a].remainder > quotas[b].remainder; });
  for (std::size_t k = 0; assigned < total_val && k < order.size(); ++k, ++assigned) ++quotas[order[k]].base;

  for (const auto& q : quotas) {
    const auto& members = strata[q.stratum];
    for (std::size_t m = 0; m < members.size(); ++m) out.rows[members[m]].split = m < q.base ? Split::Val : Split::Train;
  }

  std::map<std::string, Split> by_id;
  for (const auto& r : out.rows) by_id[r.image_id] = r.split;
  for (auto& r : out.rows)
    if (r.augmented_from)
      if (auto it = by_id.find(*r.augmented_from); it != by_id.end()) r.split = it->second;
  return out;
}

std::string_view to_string(AugmentOp op) noexcept {
  switch (op) {
    case AugmentOp::HFlip: return "hflip";
    case AugmentOp::VFlip: return "vflip";
    case AugmentOp::Rot90: return "rot90";
    case AugmentOp::Rot180: return "rot180";
    case AugmentOp::Rot270: return "rot270";
  }
  return "hflip";
}

std::optional<AugmentOp> augment_op_from_string(std::string_view s) noexcept {
  for (auto op : {AugmentOp::HFlip, AugmentOp::VFlip, AugmentOp::Rot90, AugmentOp::Rot180, AugmentOp::Rot270})
    if (to_string(op) == s) return op;
  return std::nullopt;
}

AugmentationSpec parse_augmentation(const std::string& ops_csv, int multiplier) {
  AugmentationSpec spec;
  spec.multiplier = multiplier;
  std::vector<std::string> problems;
  std::size_t start = 0;
  while (start <= ops_csv.size()) {
    const std::size_t comma = ops_csv.find(',', start);
    const std::string name = ops_csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!name.empty()) {
      if (auto op = augment_op_from_string(name)) spec.ops.push_back(*op);
      else problems.push_back("ops: '" + name + "' is not a count/class-preserving op (allowed: hflip, vflip, rot90, rot180, rot270)");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (spec.ops.empty() && problems.empty()) problems.push_back("ops: at least one op is required");
  if (multiplier < 1) problems.push_back("multiplier: must be >= 1");
  if (!problems.empty()) throw ValidationError(problems);
  return spec;
}

namespace {

bool swaps_axes(AugmentOp op) { return op == AugmentOp::Rot90 || op == AugmentOp::Rot270; }

// Destination pixel for source pixel (x, y) in a w x h image.
std::pair<int, int> map_pixel(int x, int y, int w, int h, AugmentOp op) {
  switch (op) {
    case AugmentOp::HFlip: return {w - 1 - x, y};
    case AugmentOp::VFlip: return {x, h - 1 - y};
    case AugmentOp::Rot90: return {y, w - 1 - x};
    case AugmentOp::Rot180: return {w - 1 - x, h - 1 - y};
    case AugmentOp::Rot270: return {h - 1 - y, x};
  }
  return {x, y};
}

}  // namespace

Raster transform_raster(const Raster& src, AugmentOp op) {
  Raster out = swaps_axes(op) ? Raster(src.height, src.width) : Raster(src.width, src.height);
  for (int y = 0; y < src.height; ++y)
    for (int x = 0; x < src.width; ++x) {
      const auto [dx, dy] = map_pixel(x, y, src.width, src.height, op);
      out.set(dx, dy, src.at(x, y));
    }
  return out;
}

Box transform_box(const Box& b, AugmentOp op, int width, int height) {
  const double w = width, h = height;
  switch (op) {
    case AugmentOp::HFlip: return {w - b.x_max, b.y_min, w - b.x_min, b.y_max};
    case AugmentOp::VFlip: return {b.x_min, h - b.y_max, b.x_max, h - b.y_min};
    case AugmentOp::Rot90: return {b.y_min, w - b.x_max, b.y_max, w - b.x_min};
    case AugmentOp::Rot180: return {w - b.x_max, h - b.y_max, w - b.x_min, h - b.y_min};
    case AugmentOp::Rot270: return {h - b.y_max, b.x_min, h - b.y_min, b.x_max};
  }
  return b;
}

GroundTruth transform_ground_truth(const GroundTruth& gt, AugmentOp op, int width, int height) {
  GroundTruth out = gt;
  if (out.boxes)
    for (auto& lb : *out.boxes) lb.box = transform_box(lb.box, op, width, height);
  return out;
}

DensityMap transform_density(const DensityMap& m, AugmentOp op) {
  DensityMap out = m;
  if (swaps_axes(op)) std::swap(out.width, out.height);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) {
      const auto [dx, dy] = map_pixel(x, y, m.width, m.height, op);
      out.values[static_cast<std::size_t>(dy) * out.width + dx] = m.values[static_cast<std::size_t>(y) * m.width + x];
    }
  return out;
}

DatasetManifest augment_dataset(const DatasetManifest& manifest, const fs::path& manifest_dir, const AugmentationSpec& spec) {
  if (spec.ops.empty() || spec.multiplier < 1) throw ValidationError({"augmentation: need at least one op and multiplier >= 1"});
  const int w = manifest.header.image_width, h = manifest.header.image_height;
  if (w != h)
    for (auto op : spec.ops)
      if (swaps_axes(op))
        throw ValidationError({"ops: " + std::string(to_string(op)) + " needs square images (dataset is " +
                               std::to_string(w) + "x" + std::to_string(h) + ")"});

  DatasetManifest out = manifest;
  std::set<std::string> ids;
  for (const auto& r : manifest.rows) ids.insert(r.image_id);

  std::vector<fs::path> written;
  try {
    std::size_t ordinal = 0;
    for (const auto& parent : manifest.rows) {
      if (parent.split != Split::Train || parent.augmented_from) continue;
      std::optional<Raster> image;
      std::optional<DensityMap> density;
      for (int k = 1; k < spec.multiplier; ++k) {
        const AugmentOp op = spec.ops[(ordinal + static_cast<std::size_t>(k) - 1) % spec.ops.size()];
        if (!image) image = read_image(manifest_dir / parent.path);
        ManifestRow row = parent;
        row.image_id = parent.image_id + "_aug" + std::to_string(k) + "_" + std::string(to_string(op));
        if (!ids.insert(row.image_id).second) throw ValidationError({"augment: image_id '" + row.image_id + "' already exists"});
        row.path = "images/" + row.image_id + ".png";
        row.augmented_from = parent.image_id;
        row.augment_op = std::string(to_string(op));
        row.ground_truth = transform_ground_truth(parent.ground_truth, op, w, h);
        row.ground_truth.image_id = row.image_id;
        fs::create_directories((manifest_dir / row.path).parent_path());
        write_png(manifest_dir / row.path, transform_raster(*image, op));
        written.push_back(manifest_dir / row.path);
        if (parent.ground_truth.density_ref) {
          if (!density) density = read_density_map(manifest_dir / *parent.ground_truth.density_ref);
          const std::string ref = "density/" + row.image_id + ".afdm";
          write_density_map(manifest_dir / ref, transform_density(*density, op));
          written.push_back(manifest_dir / ref);
          row.ground_truth.density_ref = ref;
        }
        out.rows.push_back(std::move(row));
      }
      ++ordinal;
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
  return out;
}

}  // namespace aeroforge
