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

/*
 * AeroForge C API.
 *
 * Every fallible call returns an af_status. On failure a human-readable message is
 * available from af_last_error() on the calling thread until the next API call on
 * that thread. Strings returned through `char**` out-parameters are owned by the
 * caller and must be released with af_string_free(). Handles are released with their
 * matching *_free function; passing NULL to any *_free function is a no-op.
 */
#ifndef AEROFORGE_AEROFORGE_H
#define AEROFORGE_AEROFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(AEROFORGE_BUILDING_LIBRARY)
#define AF_API __attribute__((visibility("default")))
#else
#define AF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as the command-line exit codes. */
typedef enum af_status {
  AF_OK = 0,
  AF_ERR_VALIDATION = 1, /* bad config, manifest violation, metric precondition */
  AF_ERR_IO = 2,         /* unreadable or unwritable file, undecodable image */
  AF_ERR_PLACEMENT = 3   /* object placement ran out of attempts */
} af_status;

typedef enum af_format { AF_FORMAT_TEXT = 0, AF_FORMAT_JSON = 1 } af_format;

AF_API const char* af_version(void);
AF_API const char* af_last_error(void);
AF_API void af_string_free(char* s);

AF_API uint64_t af_derive_image_seed(uint64_t master_seed, uint64_t image_index);

/* ---- generator configuration ---------------------------------------------------- */

typedef struct af_config af_config;

/* scenario: "fire_classification" or "house_counting". */
AF_API af_status af_config_default(const char* scenario, af_config** out);
AF_API af_status af_config_load(const char* path, af_config** out);
AF_API af_status af_config_from_json(const char* json_text, af_config** out);
AF_API af_status af_config_to_json(const af_config* config, char** out);
/* Lowercase hex SHA-256 of the canonical JSON serialization. */
AF_API af_status af_config_hash(const af_config* config, char** out);
AF_API af_status af_config_set_seed(af_config* config, uint64_t master_seed);
AF_API uint64_t af_config_seed(const af_config* config);
AF_API af_status af_config_set_detail_version(af_config* config, const char* detail_version);
AF_API void af_config_free(af_config* config);

/* ---- single scenes -------------------------------------------------------------- */

typedef struct af_scene af_scene;

/* force_fire: -1 draws from fire_probability, 0 forces forest, 1 forces fire. */
AF_API af_status af_scene_sample(const af_config* config, uint64_t image_seed, int force_fire, af_scene** out);
AF_API size_t af_scene_object_count(const af_scene* scene);
AF_API int64_t af_scene_house_count(const af_scene* scene);
AF_API int af_scene_contains_fire(const af_scene* scene);
AF_API af_status af_scene_ground_truth_json(const af_scene* scene, char** out);
AF_API af_status af_scene_render_png(const af_scene* scene, const af_config* config, const char* path);
/* Writes the AFDM density map of the scene's houses. */
AF_API af_status af_scene_write_density(const af_scene* scene, double sigma, const char* path);
AF_API void af_scene_free(af_scene* scene);

/* ---- dataset operations --------------------------------------------------------- */

typedef struct af_generate_options {
  size_t count;
  const char* out_dir;
  int balanced;        /* nonzero: exactly floor(count * fire_probability) fire images */
  int density;         /* nonzero: also write density maps (counting scenario) */
  unsigned threads;    /* 0 is treated as 1 */
  const char* created; /* manifest timestamp override, may be NULL */
} af_generate_options;

/* summary_json (may be NULL) receives {"images":N,"manifest":path,"fire":F,"forest":G}. */
AF_API af_status af_generate(const af_config* config, const af_generate_options* options, char** summary_json);

/* Returns AF_ERR_VALIDATION when violations are found; the report is still produced. */
AF_API af_status af_validate_manifest(const char* manifest_path, af_format format, char** report);
AF_API af_status af_stats(const char* manifest_path, af_format format, char** report);
/* manifest_out may be NULL to rewrite manifest_in in place. */
AF_API af_status af_split(const char* manifest_in, const char* manifest_out, double val_fraction, uint64_t split_seed,
                          char** summary);
/* ops_csv: comma-separated subset of hflip,vflip,rot90,rot180,rot270. */
AF_API af_status af_augment(const char* manifest_in, const char* manifest_out, const char* ops_csv, int multiplier,
                            char** summary);

/* ---- evaluation ----------------------------------------------------------------- */

typedef struct af_evaluate_options {
  const char* manifest_path;
  const char* predictions_path;
  const char* task;  /* "classify" or "count" */
  const char* split; /* NULL for every row */
  int round;         /* nonzero: also report metrics on half-to-even rounded predictions */
  size_t top_k;      /* 0 selects the default of 10 */
  af_format format;
} af_evaluate_options;

AF_API af_status af_evaluate(const af_evaluate_options* options, char** report);
/* Writes the SVG chart and a normalized CSV with the same stem. */
AF_API af_status af_plot_curves(const char* training_log, const char* svg_out, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* AEROFORGE_AEROFORGE_H */
