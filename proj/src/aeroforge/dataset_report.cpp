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

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aeroforge/dataset.hpp"
#include "aeroforge/errors.hpp"
#include "aeroforge/image_io.hpp"

namespace aeroforge {

namespace fs = std::filesystem;
using nlohmann::json;

ValidationReport validate_manifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + manifest_path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const ManifestParse parsed = parse_manifest_text(buffer.str());

  ValidationReport report;
  for (const auto& p : parsed.problems) {
    const auto colon = p.find(':');
    report.violations.push_back({p.substr(0, colon), colon == std::string::npos ? p : p.substr(colon + 2)});
  }

  const auto& m = parsed.manifest;
  const auto& h = m.header;
  const fs::path base = manifest_path.parent_path();
  std::map<std::string, std::size_t> seen;
  std::set<std::string> ids;
  for (const auto& r : m.rows) ids.insert(r.image_id);

  for (const auto& r : m.rows) {
    ++report.rows_checked;
    auto bad = [&](const std::string& msg) { report.violations.push_back({r.image_id, msg}); };
    if (++seen[r.image_id] == 2) bad("duplicate image_id");

    const fs::path image = base / r.path;
    std::error_code ec;
    if (!fs::is_regular_file(image, ec)) {
      bad("missing file '" + r.path + "'");
    } else {
      try {
        const Raster decoded = read_image(image);
        if (decoded.width != h.image_width || decoded.height != h.image_height)
          bad("image is " + std::to_string(decoded.width) + "x" + std::to_string(decoded.height) + ", expected " +
              std::to_string(h.image_width) + "x" + std::to_string(h.image_height));
      } catch (const IoError& e) {
        bad(std::string("undecodable image: ") + e.what());
      }
    }

    for (const auto& p : check_ground_truth(r.ground_truth, h.scenario, h.image_width, h.image_height)) bad(p);
    if (r.ground_truth.house_count && *r.ground_truth.house_count > h.max_count)
      bad("house_count " + std::to_string(*r.ground_truth.house_count) + " out of range [0, " + std::to_string(h.max_count) + "]");
    if (r.augmented_from && !ids.contains(*r.augmented_from))
      bad("augmented_from '" + *r.augmented_from + "' does not name a row");
    if (r.ground_truth.density_ref) {
      const fs::path dpath = base / *r.ground_truth.density_ref;
      if (!fs::is_regular_file(dpath, ec)) {
        bad("missing density file '" + *r.ground_truth.density_ref + "'");
      } else {
        try {
          const DensityMap dm = read_density_map(dpath);
          if (dm.width != h.image_width || dm.height != h.image_height) bad("density map dimensions differ from the image");
          if (r.ground_truth.house_count) {
            const double count = static_cast<double>(*r.ground_truth.house_count);
            if (std::abs(dm.total() - count) > 1e-3 * count + 1e-4) bad("density map integral differs from house_count");
          }
        } catch (const IoError& e) {
          bad(std::string("unreadable density map: ") + e.what());
        }
      }
    }
  }
  return report;
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  out << "rows checked: " << rows_checked << "\n";
  out << "violations: " << violations.size() << "\n";
  for (const auto& v : violations) out << "  [" << v.row << "] " << v.message << "\n";
  return out.str();
}

json ValidationReport::to_json() const {
  json items = json::array();
  for (const auto& v : violations) items.push_back({{"row", v.row}, {"message", v.message}});
  return {{"rows_checked", rows_checked}, {"violation_count", violations.size()}, {"violations", items}};
}

DatasetStats dataset_stats(const DatasetManifest& m) {
  DatasetStats s;
  s.scenario = m.header.scenario;
  s.config_hash = m.header.config_hash;
  s.detail_version = m.header.detail_version;
  double count_sum = 0;
  std::size_t counted = 0;
  std::map<std::string, double> lineage_count_sum;
  std::map<std::string, std::size_t> lineage_counted;
  for (const auto& r : m.rows) {
    ++s.rows;
    s.augmented += r.augmented_from.has_value();
    ++s.split_sizes[std::string(to_string(r.split))];
    auto& lin = s.lineages[r.detail_version];
    ++lin.rows;
    const auto& gt = r.ground_truth;
    if (gt.class_label) {
      const bool fire = *gt.class_label == ClassLabel::Fire;
      (fire ? s.fire : s.forest)++;
      (fire ? lin.fire : lin.forest)++;
    }
    if (gt.house_count) {
      ++s.count_histogram[*gt.house_count];
      count_sum += static_cast<double>(*gt.house_count);
      ++counted;
      lineage_count_sum[r.detail_version] += static_cast<double>(*gt.house_count);
      ++lineage_counted[r.detail_version];
    }
  }
  s.mean_count = counted ? count_sum / static_cast<double>(counted) : 0.0;
  for (auto& [tag, lin] : s.lineages)
    if (lineage_counted[tag]) lin.mean_count = lineage_count_sum[tag] / static_cast<double>(lineage_counted[tag]);
  return s;
}

std::string DatasetStats::to_text() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << "scenario: " << to_string(scenario) << "\n";
  out << "config hash: " << config_hash << "\n";
  out << "lineage: " << detail_version << "\n";
  out << "rows: " << rows << " (" << augmented << " augmented)\n";
  out << "splits:";
  for (const auto& [name, n] : split_sizes) out << " " << name << "=" << n;
  out << "\n";
  if (fire + forest > 0) {
    const double total = static_cast<double>(fire + forest);
    out << "class balance: fire " << fire << " (" << 100.0 * fire / total << "%), forest " << forest << " ("
        << 100.0 * forest / total << "%)\n";
  }
  if (!count_histogram.empty()) {
    std::size_t total = 0;
    for (const auto& [k, n] : count_histogram) total += n;
    out << "house count mean: " << mean_count << "\n";
    out << "house count histogram:\n";
    for (const auto& [k, n] : count_histogram)
      out << "  " << k << ": " << n << " (" << 100.0 * static_cast<double>(n) / static_cast<double>(total) << "%)\n";
  }
  out << "per lineage:\n";
  for (const auto& [tag, lin] : lineages) {
    out << "  " << tag << ": " << lin.rows << " rows";
    if (lin.fire + lin.forest > 0) out << ", fire " << lin.fire << ", forest " << lin.forest;
    if (scenario == Scenario::HouseCounting) out << ", mean count " << lin.mean_count;
    out << "\n";
  }
  return out.str();
}

json DatasetStats::to_json() const {
  json hist = json::object();
  for (const auto& [k, n] : count_histogram) hist[std::to_string(k)] = n;
  json splits = json::object();
  for (const auto& [name, n] : split_sizes) splits[name] = n;
  json lin = json::object();
  for (const auto& [tag, l] : lineages) lin[tag] = {{"rows", l.rows}, {"fire", l.fire}, {"forest", l.forest}, {"mean_count", l.mean_count}};
  const double labeled = static_cast<double>(fire + forest);
  return {{"scenario", std::string(to_string(scenario))},
          {"config_hash", config_hash},
          {"detail_version", detail_version},
          {"rows", rows},
          {"augmented", augmented},
          {"splits", splits},
          {"fire", fire},
          {"forest", forest},
          {"fire_fraction", labeled > 0 ? fire / labeled : 0.0},
          {"count_histogram", hist},
          {"mean_count", mean_count},
          {"lineages", lin}};
}

}  // namespace aeroforge
