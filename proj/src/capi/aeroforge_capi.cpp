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

#include "aeroforge/aeroforge.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>

#include "aeroforge/config.hpp"
#include "aeroforge/dataset.hpp"
#include "aeroforge/errors.hpp"
#include "aeroforge/evaluator.hpp"
#include "aeroforge/groundtruth.hpp"
#include "aeroforge/image_io.hpp"
#include "aeroforge/manifest.hpp"
#include "aeroforge/raster.hpp"
#include "aeroforge/rng.hpp"
#include "aeroforge/scene.hpp"

namespace fs = std::filesystem;
namespace af = aeroforge;

struct af_config {
  af::GeneratorConfig value;
};

struct af_scene {
  af::SceneGraph value;
};

namespace {

thread_local std::string g_last_error;

af_status fail(af_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

af_status status_of(const af::Error& e) {
  switch (e.kind()) {
    case af::ErrorKind::Validation: return AF_ERR_VALIDATION;
    case af::ErrorKind::Io: return AF_ERR_IO;
    case af::ErrorKind::PlacementExhausted: return AF_ERR_PLACEMENT;
  }
  return AF_ERR_VALIDATION;
}

// Runs `body`, translating exceptions into status codes. Filesystem and allocation
// failures are I/O class errors; anything else is reported as a validation error.
template <class F>
af_status guarded(F&& body) noexcept {
  g_last_error.clear();
  try {
    return body();
  } catch (const af::Error& e) {
    return fail(status_of(e), e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(AF_ERR_IO, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(AF_ERR_VALIDATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AF_ERR_IO, "out of memory");
  } catch (const std::exception& e) {
    return fail(AF_ERR_VALIDATION, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

af_status require(bool condition, const char* what) {
  if (!condition) throw af::ValidationError({what});
  return AF_OK;
}

std::string render(const nlohmann::json& j, const std::string& text, af_format format) {
  return format == AF_FORMAT_JSON ? j.dump(2) + "\n" : text;
}

}  // namespace

extern "C" {

const char* af_version(void) { return af::kToolVersion; }

const char* af_last_error(void) { return g_last_error.c_str(); }

void af_string_free(char* s) { std::free(s); }

uint64_t af_derive_image_seed(uint64_t master_seed, uint64_t image_index) {
  return af::derive_image_seed(master_seed, image_index);
}

af_status af_config_default(const char* scenario, af_config** out) {
  return guarded([&] {
    require(scenario && out, "af_config_default: null argument");
    const auto s = af::scenario_from_string(scenario);
    require(s.has_value(), "unknown scenario (expected fire_classification or house_counting)");
    *out = new af_config{af::default_config(*s)};
    return AF_OK;
  });
}

af_status af_config_load(const char* path, af_config** out) {
  return guarded([&] {
    require(path && out, "af_config_load: null argument");
    *out = new af_config{af::load_config(path)};
    return AF_OK;
  });
}

af_status af_config_from_json(const char* json_text, af_config** out) {
  return guarded([&] {
    require(json_text && out, "af_config_from_json: null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw af::ValidationError({std::string("config is not valid JSON: ") + e.what()});
    }
    *out = new af_config{af::config_from_json(j)};
    return AF_OK;
  });
}

af_status af_config_to_json(const af_config* config, char** out) {
  return guarded([&] {
    require(config && out, "af_config_to_json: null argument");
    emit(out, af::config_to_json(config->value).dump(2) + "\n");
    return AF_OK;
  });
}

af_status af_config_hash(const af_config* config, char** out) {
  return guarded([&] {
    require(config && out, "af_config_hash: null argument");
    emit(out, af::config_hash(config->value));
    return AF_OK;
  });
}

af_status af_config_set_seed(af_config* config, uint64_t master_seed) {
  return guarded([&] {
    require(config, "af_config_set_seed: null config");
    config->value.master_seed = master_seed;
    return AF_OK;
  });
}

uint64_t af_config_seed(const af_config* config) { return config ? config->value.master_seed : 0; }

af_status af_config_set_detail_version(af_config* config, const char* detail_version) {
  return guarded([&] {
    require(config && detail_version, "af_config_set_detail_version: null argument");
    config->value.detail_version = detail_version;
    af::require_valid(config->value);
    return AF_OK;
  });
}

void af_config_free(af_config* config) { delete config; }

af_status af_scene_sample(const af_config* config, uint64_t image_seed, int force_fire, af_scene** out) {
  return guarded([&] {
    require(config && out, "af_scene_sample: null argument");
    af::require_valid(config->value);
    std::optional<bool> force;
    if (force_fire >= 0) force = force_fire != 0;
    *out = new af_scene{af::sample_scene(config->value, image_seed, force)};
    return AF_OK;
  });
}

size_t af_scene_object_count(const af_scene* scene) { return scene ? scene->value.objects.size() : 0; }

int64_t af_scene_house_count(const af_scene* scene) {
  if (!scene) return 0;
  int64_t n = 0;
  for (const auto& o : scene->value.objects) n += o.object_class == af::ObjectClass::House;
  return n;
}

int af_scene_contains_fire(const af_scene* scene) { return scene && scene->value.contains_fire ? 1 : 0; }

af_status af_scene_ground_truth_json(const af_scene* scene, char** out) {
  return guarded([&] {
    require(scene && out, "af_scene_ground_truth_json: null argument");
    emit(out, af::ground_truth_to_json(af::derive_ground_truth(scene->value)).dump());
    return AF_OK;
  });
}

af_status af_scene_render_png(const af_scene* scene, const af_config* config, const char* path) {
  return guarded([&] {
    require(scene && config && path, "af_scene_render_png: null argument");
    af::write_png(path, af::render_scene(scene->value, config->value));
    return AF_OK;
  });
}

af_status af_scene_write_density(const af_scene* scene, double sigma, const char* path) {
  return guarded([&] {
    require(scene && path, "af_scene_write_density: null argument");
    af::write_density_map(path, af::render_density_map(scene->value, sigma));
    return AF_OK;
  });
}

void af_scene_free(af_scene* scene) { delete scene; }

af_status af_generate(const af_config* config, const af_generate_options* options, char** summary_json) {
  return guarded([&] {
    require(config && options && options->out_dir, "af_generate: null argument");
    af::GenerateOptions o;
    o.count = options->count;
    o.out_dir = options->out_dir;
    o.balanced = options->balanced != 0;
    o.density = options->density != 0;
    o.threads = options->threads == 0 ? 1 : options->threads;
    if (options->created) o.created = options->created;
    const auto manifest = af::generate_dataset(config->value, o);
    std::size_t fire = 0, forest = 0;
    for (const auto& r : manifest.rows) {
      if (r.ground_truth.class_label == af::ClassLabel::Fire) ++fire;
      if (r.ground_truth.class_label == af::ClassLabel::Forest) ++forest;
    }
    emit(summary_json, nlohmann::json{{"images", manifest.rows.size()},
                                      {"manifest", (fs::path(options->out_dir) / "manifest.jsonl").string()},
                                      {"config_hash", manifest.header.config_hash},
                                      {"fire", fire},
                                      {"forest", forest}}
                           .dump());
    return AF_OK;
  });
}

af_status af_validate_manifest(const char* manifest_path, af_format format, char** report) {
  return guarded([&] {
    require(manifest_path, "af_validate_manifest: null manifest path");
    const auto r = af::validate_manifest(manifest_path);
    emit(report, render(r.to_json(), r.to_text(), format));
    if (r.ok()) return AF_OK;
    return fail(AF_ERR_VALIDATION, std::to_string(r.violations.size()) + " violation(s) in '" + manifest_path + "'");
  });
}

af_status af_stats(const char* manifest_path, af_format format, char** report) {
  return guarded([&] {
    require(manifest_path, "af_stats: null manifest path");
    const auto s = af::dataset_stats(af::read_manifest(manifest_path));
    emit(report, render(s.to_json(), s.to_text(), format));
    return AF_OK;
  });
}

af_status af_split(const char* manifest_in, const char* manifest_out, double val_fraction, uint64_t split_seed,
                   char** summary) {
  return guarded([&] {
    require(manifest_in, "af_split: null manifest path");
    const auto result = af::split_dataset(af::read_manifest(manifest_in), val_fraction, split_seed);
    const fs::path out = manifest_out ? manifest_out : manifest_in;
    af::write_manifest(out, result);
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& r : result.rows) sizes[std::string(af::to_string(r.split))] = sizes.value(std::string(af::to_string(r.split)), 0) + 1;
    emit(summary, nlohmann::json{{"manifest", out.string()}, {"splits", sizes}}.dump());
    return AF_OK;
  });
}

af_status af_augment(const char* manifest_in, const char* manifest_out, const char* ops_csv, int multiplier,
                     char** summary) {
  return guarded([&] {
    require(manifest_in && ops_csv, "af_augment: null argument");
    const auto spec = af::parse_augmentation(ops_csv, multiplier);
    const fs::path in = manifest_in;
    const fs::path out = manifest_out ? manifest_out : manifest_in;
    const auto source = af::read_manifest(in);
    const auto result = af::augment_dataset(source, in.parent_path(), spec);
    af::write_manifest(out, result);
    emit(summary, nlohmann::json{{"manifest", out.string()},
                                 {"rows_before", source.rows.size()},
                                 {"rows_after", result.rows.size()}}
                      .dump());
    return AF_OK;
  });
}

af_status af_evaluate(const af_evaluate_options* options, char** report) {
  return guarded([&] {
    require(options && options->manifest_path && options->predictions_path && options->task,
            "af_evaluate: null argument");
    const std::string task = options->task;
    require(task == "classify" || task == "count", "task must be 'classify' or 'count'");
    af::EvaluateOptions eo;
    if (options->split) {
      eo.split = af::split_from_string(options->split);
      require(eo.split.has_value(), "split must be train, val, test or external");
    }
    eo.round = options->round != 0;
    if (options->top_k) eo.top_k = options->top_k;
    const auto manifest = af::read_manifest(options->manifest_path);
    const auto preds = af::read_predictions(options->predictions_path);
    const auto r = task == "classify" ? af::evaluate_classification(preds, manifest, eo)
                                      : af::evaluate_counting(preds, manifest, eo);
    emit(report, render(r.to_json(), r.to_text(), options->format));
    return AF_OK;
  });
}

af_status af_plot_curves(const char* training_log, const char* svg_out, char** summary) {
  return guarded([&] {
    require(training_log && svg_out, "af_plot_curves: null argument");
    const auto s = af::export_curves(training_log, svg_out);
    emit(summary, nlohmann::json{{"epochs", s.epochs},
                                 {"x_min", s.x_min},
                                 {"x_max", s.x_max},
                                 {"svg", s.svg_path.string()},
                                 {"csv", s.csv_path.string()}}
                      .dump());
    return AF_OK;
  });
}

}  // extern "C"
