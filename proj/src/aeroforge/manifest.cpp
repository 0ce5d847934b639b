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

#include "aeroforge/manifest.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "aeroforge/errors.hpp"

namespace aeroforge {

using nlohmann::json;

std::string_view to_string(Split s) noexcept {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    case Split::External: return "external";
  }
  return "train";
}

std::optional<Split> split_from_string(std::string_view s) noexcept {
  if (s == "train") return Split::Train;
  if (s == "val") return Split::Val;
  if (s == "test") return Split::Test;
  if (s == "external") return Split::External;
  return std::nullopt;
}

const ManifestRow* DatasetManifest::find(const std::string& image_id) const noexcept {
  for (const auto& r : rows)
    if (r.image_id == image_id) return &r;
  return nullptr;
}

json header_to_json(const ManifestHeader& h) {
  return json{{"aeroforge_manifest", kManifestFormat},
              {"config_hash", h.config_hash},
              {"master_seed", h.master_seed},
              {"scenario", std::string(to_string(h.scenario))},
              {"tool_version", h.tool_version},
              {"detail_version", h.detail_version},
              {"created", h.created},
              {"image_width", h.image_width},
              {"image_height", h.image_height},
              {"max_count", h.max_count}};
}

json row_to_json(const ManifestRow& r) {
  json j{{"image_id", r.image_id},
         {"path", r.path},
         {"split", std::string(to_string(r.split))},
         {"ground_truth", ground_truth_to_json(r.ground_truth)},
         {"detail_version", r.detail_version}};
  if (r.image_seed) j["image_seed"] = *r.image_seed;
  if (r.augmented_from) j["augmented_from"] = *r.augmented_from;
  if (r.augment_op) j["augment_op"] = *r.augment_op;
  return j;
}

std::string manifest_to_jsonl(const DatasetManifest& m) {
  std::string out = header_to_json(m.header).dump();
  out += '\n';
  for (const auto& r : m.rows) {
    out += row_to_json(r).dump();
    out += '\n';
  }
  return out;
}

namespace {

ManifestHeader parse_header(const json& j, std::vector<std::string>& problems) {
  ManifestHeader h;
  auto need = [&](const char* key) -> const json* {
    auto it = j.find(key);
    if (it == j.end()) {
      problems.push_back(std::string("line 1: header missing '") + key + "'");
      return nullptr;
    }
    return &*it;
  };
  try {
    if (auto* v = need("aeroforge_manifest"); v && v->get<int>() != kManifestFormat)
      problems.push_back("line 1: unsupported manifest format " + v->dump());
    if (auto* v = need("config_hash")) h.config_hash = v->get<std::string>();
    if (auto* v = need("master_seed")) h.master_seed = v->get<std::uint64_t>();
    if (auto* v = need("scenario")) {
      if (auto s = scenario_from_string(v->get<std::string>())) h.scenario = *s;
      else problems.push_back("line 1: unknown scenario " + v->dump());
    }
    if (auto* v = need("tool_version")) h.tool_version = v->get<std::string>();
    if (auto it = j.find("detail_version"); it != j.end()) h.detail_version = it->get<std::string>();
    if (auto it = j.find("created"); it != j.end()) h.created = it->get<std::string>();
    if (auto* v = need("image_width")) h.image_width = v->get<int>();
    if (auto* v = need("image_height")) h.image_height = v->get<int>();
    if (auto* v = need("max_count")) h.max_count = v->get<int>();
  } catch (const json::exception& e) {
    problems.push_back(std::string("line 1: bad header field type (") + e.what() + ")");
  }
  return h;
}

std::optional<ManifestRow> parse_row(const json& j, const std::string& where, const std::string& default_lineage,
                                     std::vector<std::string>& problems) {
  ManifestRow r;
  try {
    if (!j.is_object()) throw std::runtime_error("expected a JSON object");
    r.image_id = j.at("image_id").get<std::string>();
    r.path = j.at("path").get<std::string>();
    const auto split = j.at("split").get<std::string>();
    if (auto s = split_from_string(split)) r.split = *s;
    else throw std::runtime_error("unknown split '" + split + "'");
    if (auto it = j.find("image_seed"); it != j.end()) r.image_seed = it->get<std::uint64_t>();
    r.detail_version = j.value("detail_version", default_lineage);
    if (auto it = j.find("augmented_from"); it != j.end()) r.augmented_from = it->get<std::string>();
    if (auto it = j.find("augment_op"); it != j.end()) r.augment_op = it->get<std::string>();
    r.ground_truth = ground_truth_from_json(j.at("ground_truth"), r.image_id);
  } catch (const std::exception& e) {
    problems.push_back(where + ": " + e.what());
    return std::nullopt;
  }
  return r;
}

}  // namespace

ManifestParse parse_manifest_text(const std::string& text) {
  ManifestParse out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      out.problems.push_back(where + ": malformed JSON");
      continue;
    }
    if (!have_header) {
      have_header = true;
      if (!j.is_object() || !j.contains("aeroforge_manifest")) {
        out.problems.push_back(where + ": first line must be the manifest header");
        continue;
      }
      out.manifest.header = parse_header(j, out.problems);
      continue;
    }
    if (auto row = parse_row(j, where, out.manifest.header.detail_version, out.problems))
      out.manifest.rows.push_back(std::move(*row));
  }
  if (!have_header) out.problems.push_back("line 1: empty manifest (no header)");
  return out;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = parse_manifest_text(buffer.str());
  if (!parsed.problems.empty()) throw ValidationError(parsed.problems);
  return std::move(parsed.manifest);
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  const std::string text = manifest_to_jsonl(manifest);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("failed writing manifest '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace manifest '" + path.string() + "': " + ec.message());
}

void export_manifest_csv(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "image_id,path,split,image_seed,class_label,house_count,detail_version,augmented_from\n";
  for (const auto& r : manifest.rows) {
    const auto& gt = r.ground_truth;
    out << r.image_id << ',' << r.path << ',' << to_string(r.split) << ','
        << (r.image_seed ? std::to_string(*r.image_seed) : "") << ','
        << (gt.class_label ? std::string(to_string(*gt.class_label)) : "") << ','
        << (gt.house_count ? std::to_string(*gt.house_count) : "") << ',' << r.detail_version << ','
        << r.augmented_from.value_or("") << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string creation_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  else t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace aeroforge
