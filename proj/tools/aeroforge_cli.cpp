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

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aeroforge/aeroforge.h"

namespace {

struct Globals {
  unsigned threads = 1;
  bool quiet = false;
};

using ConfigPtr = std::unique_ptr<af_config, decltype(&af_config_free)>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { af_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

int report_error(af_status status) {
  std::cerr << "aeroforge: error: " << af_last_error() << "\n";
  return static_cast<int>(status);
}

std::optional<unsigned> parse_threads(const char* text) {
  unsigned value = 0;
  const char* end = text + std::strlen(text);
  const auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc{} || ptr != end || value < 1 || value > 1024) return std::nullopt;
  return value;
}

af_format parse_format(const std::string& f) { return f == "json" ? AF_FORMAT_JSON : AF_FORMAT_TEXT; }

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format for the report")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

struct GenerateArgs {
  std::string config_path, scenario = "house_counting", out_dir, detail_version, created;
  std::optional<std::uint64_t> seed;
  std::size_t count = 0;
  bool balanced = false, density = false;
};

int run_generate(const GenerateArgs& a, const Globals& g) {
  af_config* raw = nullptr;
  af_status s = a.config_path.empty() ? af_config_default(a.scenario.c_str(), &raw) : af_config_load(a.config_path.c_str(), &raw);
  if (s != AF_OK) return report_error(s);
  ConfigPtr config(raw, af_config_free);
  if (a.seed) af_config_set_seed(config.get(), *a.seed);
  if (!a.detail_version.empty() && (s = af_config_set_detail_version(config.get(), a.detail_version.c_str())) != AF_OK)
    return report_error(s);

  af_generate_options o{};
  o.count = a.count;
  o.out_dir = a.out_dir.c_str();
  o.balanced = a.balanced;
  o.density = a.density;
  o.threads = g.threads;
  o.created = a.created.empty() ? nullptr : a.created.c_str();
  OwnedString summary;
  if ((s = af_generate(config.get(), &o, summary.out())) != AF_OK) return report_error(s);
  if (!g.quiet) std::cout << summary.str() << "\n";
  return 0;
}

struct ConfigArgs {
  std::string config_path, scenario = "house_counting";
  bool hash_only = false;
};

int run_config(const ConfigArgs& a) {
  af_config* raw = nullptr;
  af_status s = a.config_path.empty() ? af_config_default(a.scenario.c_str(), &raw) : af_config_load(a.config_path.c_str(), &raw);
  if (s != AF_OK) return report_error(s);
  ConfigPtr config(raw, af_config_free);
  OwnedString text;
  s = a.hash_only ? af_config_hash(config.get(), text.out()) : af_config_to_json(config.get(), text.out());
  if (s != AF_OK) return report_error(s);
  std::cout << text.str() << (a.hash_only ? "\n" : "");
  return 0;
}

// Prints a report produced by the library even when the call itself failed (validate).
int print_report(af_status s, const OwnedString& report, const Globals& g, bool always_print) {
  if ((always_print || s == AF_OK) && !g.quiet) std::cout << report.str();
  if (s != AF_OK) return report_error(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aeroforge: procedural aerial-scene dataset generator and evaluator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("aeroforge ") + af_version());

  Globals g;
  if (const char* env = std::getenv("AEROFORGE_THREADS"); env && *env) {
    const auto parsed = parse_threads(env);
    if (!parsed) {
      std::cerr << "aeroforge: error: AEROFORGE_THREADS must be an integer in [1, 1024], got '" << env << "'\n";
      return static_cast<int>(AF_ERR_VALIDATION);
    }
    g.threads = *parsed;
  }
  app.add_option("--threads", g.threads,
                 "Worker threads for generation; defaults to $AEROFORGE_THREADS (output bytes do not depend on it)")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_flag("-q,--quiet", g.quiet, "Suppress normal output; errors still go to standard error");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Render a dataset: images/, optional density/, manifest.jsonl");
  auto* cfg_opt = generate->add_option("--config", gen.config_path, "Generator config JSON")->check(CLI::ExistingFile);
  generate->add_option("--scenario", gen.scenario, "Built-in default config to use when --config is absent")
      ->check(CLI::IsMember({"fire_classification", "house_counting"}))
      ->excludes(cfg_opt)
      ->capture_default_str();
  generate->add_option("--count", gen.count, "Number of images")->required()->check(CLI::PositiveNumber);
  generate->add_option("--out", gen.out_dir, "Output directory (must be absent or empty)")->required();
  generate->add_option("--seed", gen.seed, "Master seed, overrides the config's master_seed");
  generate->add_flag("--balanced", gen.balanced, "Exactly floor(count * fire_probability) fire images");
  generate->add_flag("--density", gen.density, "Write AFDM density maps (house_counting only)");
  generate->add_option("--detail-version", gen.detail_version, "Lineage tag recorded in the manifest");
  generate->add_option("--created", gen.created, "Manifest timestamp override (default: now or SOURCE_DATE_EPOCH)");

  std::string manifest, format = "text";
  auto* validate = app.add_subcommand("validate", "Check a manifest against its files and ground-truth invariants");
  validate->add_option("--manifest", manifest, "manifest.jsonl")->required();
  add_format_option(validate, format);

  auto* stats = app.add_subcommand("stats", "Summarize label distributions, split sizes and lineages");
  stats->add_option("--manifest", manifest, "manifest.jsonl")->required();
  add_format_option(stats, format);

  double val_fraction = 0.2;
  std::uint64_t split_seed = 0;
  std::string out_manifest;
  auto* split = app.add_subcommand("split", "Stratified deterministic train/val assignment");
  split->add_option("--manifest", manifest, "manifest.jsonl")->required();
  split->add_option("--val-fraction", val_fraction, "Fraction of eligible rows assigned to val")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  split->add_option("--seed", split_seed, "Split seed")->required();
  split->add_option("--out", out_manifest, "Output manifest (default: rewrite --manifest in place)");

  std::string ops;
  int multiplier = 2;
  auto* augment = app.add_subcommand("augment", "Add flipped/rotated copies of training rows");
  augment->add_option("--manifest", manifest, "manifest.jsonl")->required();
  augment->add_option("--ops", ops, "Comma-separated subset of hflip,vflip,rot90,rot180,rot270")->required();
  augment->add_option("--multiplier", multiplier, "Rows per training image after augmentation, original included")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  augment->add_option("--out", out_manifest, "Output manifest (default: rewrite --manifest in place)");

  std::string predictions, task, eval_split;
  bool round = false;
  std::size_t top_k = 10;
  auto* evaluate = app.add_subcommand("evaluate", "Score a predictions CSV against manifest ground truth");
  evaluate->add_option("--manifest", manifest, "manifest.jsonl")->required();
  evaluate->add_option("--predictions", predictions, "CSV with header image_id,prediction")->required();
  evaluate->add_option("--task", task, "classify or count")->required()->check(CLI::IsMember({"classify", "count"}));
  evaluate->add_option("--split", eval_split, "Only score rows of this split")
      ->check(CLI::IsMember({"train", "val", "test", "external"}));
  evaluate->add_flag("--round", round, "Also report metrics on half-to-even rounded count predictions");
  evaluate->add_option("--top-k", top_k, "Number of worst offenders listed")->check(CLI::PositiveNumber)->capture_default_str();
  add_format_option(evaluate, format);

  std::string log, svg_out;
  auto* plot = app.add_subcommand("plot", "Render a training log (epoch,train,val) as SVG plus normalized CSV");
  plot->add_option("--log", log, "Training log CSV")->required();
  plot->add_option("--out", svg_out, "Output SVG path")->required();

  ConfigArgs cfg;
  auto* config = app.add_subcommand("config", "Print a generator config as canonical JSON, or its hash");
  auto* cfg_path = config->add_option("--config", cfg.config_path, "Config JSON to load")->check(CLI::ExistingFile);
  config->add_option("--scenario", cfg.scenario, "Built-in default to print when --config is absent")
      ->check(CLI::IsMember({"fire_classification", "house_counting"}))
      ->excludes(cfg_path)
      ->capture_default_str();
  config->add_flag("--hash", cfg.hash_only, "Print only the config hash");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(AF_ERR_VALIDATION);
  }

  const af_format fmt = parse_format(format);
  OwnedString out;
  if (generate->parsed()) return run_generate(gen, g);
  if (config->parsed()) return run_config(cfg);
  if (validate->parsed()) return print_report(af_validate_manifest(manifest.c_str(), fmt, out.out()), out, g, true);
  if (stats->parsed()) return print_report(af_stats(manifest.c_str(), fmt, out.out()), out, g, false);
  if (split->parsed()) {
    const af_status s = af_split(manifest.c_str(), out_manifest.empty() ? nullptr : out_manifest.c_str(), val_fraction,
                                 split_seed, out.out());
    if (s == AF_OK && !g.quiet) std::cout << out.str() << "\n";
    return s == AF_OK ? 0 : report_error(s);
  }
  if (augment->parsed()) {
    const af_status s =
        af_augment(manifest.c_str(), out_manifest.empty() ? nullptr : out_manifest.c_str(), ops.c_str(), multiplier, out.out());
    if (s == AF_OK && !g.quiet) std::cout << out.str() << "\n";
    return s == AF_OK ? 0 : report_error(s);
  }
  if (evaluate->parsed()) {
    af_evaluate_options o{};
    o.manifest_path = manifest.c_str();
    o.predictions_path = predictions.c_str();
    o.task = task.c_str();
    o.split = eval_split.empty() ? nullptr : eval_split.c_str();
    o.round = round;
    o.top_k = top_k;
    o.format = fmt;
    return print_report(af_evaluate(&o, out.out()), out, g, false);
  }
  if (plot->parsed()) {
    const af_status s = af_plot_curves(log.c_str(), svg_out.c_str(), out.out());
    if (s == AF_OK && !g.quiet) std::cout << out.str() << "\n";
    return s == AF_OK ? 0 : report_error(s);
  }
  return static_cast<int>(AF_ERR_VALIDATION);
}
