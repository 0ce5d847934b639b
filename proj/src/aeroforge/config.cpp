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

#include "aeroforge/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aeroforge/errors.hpp"
#include "aeroforge/hash.hpp"

namespace aeroforge {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::pair<ObjectClass, std::string_view> kClassNames[] = {
    {ObjectClass::House, "house"},   {ObjectClass::Tree, "tree"},
    {ObjectClass::Fence, "fence"},   {ObjectClass::Garden, "garden"},
    {ObjectClass::Pool, "pool"},     {ObjectClass::Grass, "grass"},
    {ObjectClass::SmokePlume, "smoke_plume"}, {ObjectClass::FireBlob, "fire_blob"},
};

// Collects problems instead of failing on the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void problem(const std::string& where, const std::string& what) { problems.push_back(where + ": " + what); }

  void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (auto k : known) ok = ok || it.key() == k;
      if (!ok) problem(where + "." + it.key(), "unknown field");
    }
  }

  bool object(const json& j, const std::string& where) {
    if (j.is_object()) return true;
    problem(where, "expected an object");
    return false;
  }

  template <class T>
  void get(const json& obj, std::string_view key, const std::string& where, T& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    const std::string path = where + "." + std::string(key);
    try {
      if constexpr (std::is_floating_point_v<T>) {
        if (!it->is_number()) throw std::runtime_error("not a number");
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) throw std::runtime_error("not an integer");
        if constexpr (std::is_unsigned_v<T>) {
          if (it->is_number_integer() && !it->is_number_unsigned()) throw std::runtime_error("negative");
        }
      }
      out = it->get<T>();
    } catch (const std::exception&) {
      problem(path, std::string("wrong type, expected ") + type_name<T>());
    }
  }

 private:
  template <class T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, std::string>) return "string";
    else if constexpr (std::is_same_v<T, std::uint64_t>) return "unsigned integer";
    else if constexpr (std::is_integral_v<T>) return "integer";
    else if constexpr (std::is_floating_point_v<T>) return "number";
    else return "array";
  }
};

json rgb_to_json(const std::array<int, 3>& c) { return json::array({c[0], c[1], c[2]}); }

std::array<int, 3> rgb_from_json(Reader& r, const json& j, const std::string& where) {
  std::array<int, 3> out{};
  if (!j.is_array() || j.size() != 3) {
    r.problem(where, "expected an array of 3 integers");
    return out;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer()) {
      r.problem(where + "[" + std::to_string(i) + "]", "expected an integer");
      continue;
    }
    out[i] = j[i].get<int>();
  }
  return out;
}

DistributionSpec read_distribution(Reader& r, const json& j, const std::string& where) {
  if (j.is_number()) return DistributionSpec::constant(j.get<double>());
  if (!r.object(j, where)) return {};
  std::string kind;
  r.get(j, "kind", where, kind);
  if (kind == "constant") {
    r.reject_unknown(j, where, {"kind", "value"});
    ConstantDist d;
    r.get(j, "value", where, d.value);
    return {d};
  }
  if (kind == "uniform_int") {
    r.reject_unknown(j, where, {"kind", "min", "max"});
    UniformIntDist d;
    r.get(j, "min", where, d.min);
    r.get(j, "max", where, d.max);
    return {d};
  }
  if (kind == "uniform_real") {
    r.reject_unknown(j, where, {"kind", "min", "max"});
    UniformRealDist d;
    r.get(j, "min", where, d.min);
    r.get(j, "max", where, d.max);
    return {d};
  }
  if (kind == "normal") {
    r.reject_unknown(j, where, {"kind", "mean", "stddev", "min", "max"});
    NormalDist d;
    r.get(j, "mean", where, d.mean);
    r.get(j, "stddev", where, d.stddev);
    r.get(j, "min", where, d.min);
    r.get(j, "max", where, d.max);
    return {d};
  }
  if (kind == "categorical") {
    r.reject_unknown(j, where, {"kind", "values", "weights"});
    CategoricalDist d;
    r.get(j, "values", where, d.values);
    r.get(j, "weights", where, d.weights);
    return {d};
  }
  r.problem(where + ".kind", "unknown distribution kind '" + kind + "'");
  return {};
}

void check_distribution(std::vector<std::string>& out, const DistributionSpec& d, const std::string& where) {
  auto bad = [&](const std::string& what) { out.push_back(where + ": " + what); };
  auto finite = [](double v) { return std::isfinite(v); };
  std::visit(Overloaded{[&](const ConstantDist& c) {
                          if (!finite(c.value)) bad("value must be finite");
                        },
                        [&](const UniformIntDist& u) {
                          if (u.min > u.max) bad("min must not exceed max");
                        },
                        [&](const UniformRealDist& u) {
                          if (!finite(u.min) || !finite(u.max)) bad("bounds must be finite");
                          else if (u.min > u.max) bad("min must not exceed max");
                        },
                        [&](const NormalDist& n) {
                          if (!finite(n.mean) || !finite(n.stddev) || !finite(n.min) || !finite(n.max))
                            bad("parameters must be finite");
                          else if (n.stddev < 0) bad("stddev must be >= 0");
                          else if (n.min > n.max) bad("min must not exceed max");
                        },
                        [&](const CategoricalDist& c) {
                          if (c.values.empty()) bad("categorical needs at least one value");
                          if (c.values.size() != c.weights.size()) bad("values and weights differ in length");
                          double sum = 0;
                          for (double w : c.weights) {
                            if (!finite(w) || w < 0) bad("weights must be finite and non-negative");
                            sum += w;
                          }
                          if (!(sum > 0)) bad("weights must sum to a positive value");
                          for (double v : c.values)
                            if (!finite(v)) bad("values must be finite");
                        }},
             d.kind);
}

void check_support(std::vector<std::string>& out, const DistributionSpec& d, const std::string& where,
                   double lo, double hi, bool lo_exclusive, const std::string& range_text) {
  const double smin = d.support_min(), smax = d.support_max();
  const bool low_ok = lo_exclusive ? smin > lo : smin >= lo;
  if (!low_ok || smax > hi) out.push_back(where + ": support must lie within " + range_text);
}

}  // namespace

std::string_view to_string(ObjectClass c) noexcept {
  for (const auto& [k, name] : kClassNames)
    if (k == c) return name;
  return "unknown";
}

std::optional<ObjectClass> object_class_from_string(std::string_view s) noexcept {
  for (const auto& [k, name] : kClassNames)
    if (name == s) return k;
  return std::nullopt;
}

std::string_view to_string(Scenario s) noexcept {
  return s == Scenario::FireClassification ? "fire_classification" : "house_counting";
}

std::optional<Scenario> scenario_from_string(std::string_view s) noexcept {
  if (s == "fire_classification") return Scenario::FireClassification;
  if (s == "house_counting") return Scenario::HouseCounting;
  return std::nullopt;
}

json distribution_to_json(const DistributionSpec& d) {
  return std::visit(
      Overloaded{[](const ConstantDist& c) { return json{{"kind", "constant"}, {"value", c.value}}; },
                 [](const UniformIntDist& u) { return json{{"kind", "uniform_int"}, {"min", u.min}, {"max", u.max}}; },
                 [](const UniformRealDist& u) {
                   return json{{"kind", "uniform_real"}, {"min", u.min}, {"max", u.max}};
                 },
                 [](const NormalDist& n) {
                   return json{{"kind", "normal"}, {"mean", n.mean}, {"stddev", n.stddev}, {"min", n.min}, {"max", n.max}};
                 },
                 [](const CategoricalDist& c) {
                   return json{{"kind", "categorical"}, {"values", c.values}, {"weights", c.weights}};
                 }},
      d.kind);
}

DistributionSpec distribution_from_json(const json& j, const std::string& where) {
  Reader r;
  auto d = read_distribution(r, j, where);
  if (!r.problems.empty()) throw ValidationError(r.problems);
  return d;
}

std::vector<std::string> validate_config(const GeneratorConfig& c) {
  std::vector<std::string> out;
  auto bad = [&](const std::string& where, const std::string& what) { out.push_back(where + ": " + what); };

  if (c.image_width < 16) bad("image_width", "must be >= 16");
  if (c.image_height < 16) bad("image_height", "must be >= 16");
  if (c.max_count < 0) bad("max_count", "must be >= 0");
  if (!std::isfinite(c.fire_probability) || c.fire_probability < 0 || c.fire_probability > 1)
    bad("fire_probability", "must lie in [0, 1]");
  if (!std::isfinite(c.density_sigma) || c.density_sigma <= 0) bad("density_sigma", "must be > 0");

  check_distribution(out, c.count_distribution, "count_distribution");
  if (!c.count_distribution.integral()) bad("count_distribution", "must produce integers");
  check_support(out, c.count_distribution, "count_distribution", 0, c.max_count, false,
                "[0, max_count=" + std::to_string(c.max_count) + "]");

  std::set<ObjectClass> seen;
  for (std::size_t i = 0; i < c.object_specs.size(); ++i) {
    const auto& s = c.object_specs[i];
    const std::string at = "objects[" + std::to_string(i) + "]";
    if (!seen.insert(s.object_class).second) bad(at + ".class", "duplicate class '" + std::string(to_string(s.object_class)) + "'");

    check_distribution(out, s.width, at + ".width");
    check_distribution(out, s.height, at + ".height");
    check_distribution(out, s.rotation, at + ".rotation");
    check_distribution(out, s.opacity, at + ".opacity");
    check_distribution(out, s.count, at + ".count");
    check_support(out, s.width, at + ".width", 0, c.image_width, true, "(0, image_width]");
    check_support(out, s.height, at + ".height", 0, c.image_height, true, "(0, image_height]");
    check_support(out, s.opacity, at + ".opacity", 0, 1, false, "[0, 1]");
    check_support(out, s.count, at + ".count", 0, 1e6, false, "[0, 1e6]");
    if (!s.count.integral()) bad(at + ".count", "must produce integers");

    if (s.palette.empty()) bad(at + ".palette", "must contain at least one color");
    for (std::size_t p = 0; p < s.palette.size(); ++p) {
      const std::string pat = at + ".palette[" + std::to_string(p) + "]";
      for (int ch = 0; ch < 3; ++ch) {
        if (s.palette[p].rgb[ch] < 0 || s.palette[p].rgb[ch] > 255) bad(pat + ".rgb", "channels must lie in [0, 255]");
        if (s.palette[p].jitter[ch] < 0 || s.palette[p].jitter[ch] > 255) bad(pat + ".jitter", "must lie in [0, 255]");
      }
    }
    if (s.overlap.kind == OverlapPolicy::Kind::AllowWithin &&
        (!std::isfinite(s.overlap.max_iou) || s.overlap.max_iou < 0 || s.overlap.max_iou > 1))
      bad(at + ".overlap.max_iou", "must lie in [0, 1]");
    if (!std::isfinite(s.blur_sigma) || s.blur_sigma < 0) bad(at + ".blur_sigma", "must be finite and >= 0");
  }

  if (c.scenario == Scenario::HouseCounting && !c.find_spec(ObjectClass::House))
    bad("objects", "house_counting needs a 'house' object spec");
  if (c.scenario == Scenario::FireClassification) {
    if (!c.find_spec(ObjectClass::FireBlob)) bad("objects", "fire_classification needs a 'fire_blob' object spec");
    if (!c.find_spec(ObjectClass::SmokePlume)) bad("objects", "fire_classification needs a 'smoke_plume' object spec");
  }

  for (std::size_t i = 0; i < c.filter_chain.size(); ++i) {
    const auto& f = c.filter_chain[i];
    if (!std::isfinite(f.sigma) || f.sigma < 0)
      bad("filter_chain[" + std::to_string(i) + "].sigma", "must be finite and >= 0");
  }

  for (int ch = 0; ch < 3; ++ch)
    if (c.background.base_rgb[ch] < 0 || c.background.base_rgb[ch] > 255) {
      bad("background.base_rgb", "channels must lie in [0, 255]");
      break;
    }
  if (c.background.noise_amplitude < 0 || c.background.noise_amplitude > 255)
    bad("background.noise_amplitude", "must lie in [0, 255]");
  if (c.background.mode == BackgroundSpec::Mode::Hybrid && c.background.directory.empty())
    bad("background.directory", "hybrid mode needs a directory");
  return out;
}

void require_valid(const GeneratorConfig& config) {
  auto problems = validate_config(config);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

json config_to_json(const GeneratorConfig& c) {
  json objects = json::array();
  for (const auto& s : c.object_specs) {
    json palette = json::array();
    for (const auto& p : s.palette) palette.push_back({{"rgb", rgb_to_json(p.rgb)}, {"jitter", rgb_to_json(p.jitter)}});
    json avoid = json::array();
    for (auto a : s.avoid) avoid.push_back(std::string(to_string(a)));
    json overlap = s.overlap.kind == OverlapPolicy::Kind::Forbid
                       ? json{{"policy", "forbid"}}
                       : json{{"policy", "allow_within"}, {"max_iou", s.overlap.max_iou}};
    objects.push_back({{"class", std::string(to_string(s.object_class))},
                       {"width", distribution_to_json(s.width)},
                       {"height", distribution_to_json(s.height)},
                       {"rotation", distribution_to_json(s.rotation)},
                       {"palette", palette},
                       {"opacity", distribution_to_json(s.opacity)},
                       {"count", distribution_to_json(s.count)},
                       {"overlap", overlap},
                       {"avoid", avoid},
                       {"blur_sigma", s.blur_sigma}});
  }
  json filters = json::array();
  for (const auto& f : c.filter_chain) {
    switch (f.kind) {
      case FilterSpec::Kind::GaussianBlur: filters.push_back({{"kind", "gaussian_blur"}, {"sigma", f.sigma}}); break;
      case FilterSpec::Kind::Smooth: filters.push_back({{"kind", "smooth"}}); break;
      case FilterSpec::Kind::EdgeEnhance: filters.push_back({{"kind", "edge_enhance"}}); break;
    }
  }
  json background = c.background.mode == BackgroundSpec::Mode::Procedural
                        ? json{{"mode", "procedural"},
                               {"base_rgb", rgb_to_json(c.background.base_rgb)},
                               {"noise_amplitude", c.background.noise_amplitude}}
                        : json{{"mode", "hybrid"}, {"directory", c.background.directory}};
  return json{{"scenario", std::string(to_string(c.scenario))},
              {"image_width", c.image_width},
              {"image_height", c.image_height},
              {"master_seed", c.master_seed},
              {"max_count", c.max_count},
              {"objects", objects},
              {"filter_chain", filters},
              {"background", background},
              {"count_distribution", distribution_to_json(c.count_distribution)},
              {"fire_probability", c.fire_probability},
              {"detail_version", c.detail_version},
              {"density_sigma", c.density_sigma}};
}

GeneratorConfig config_from_json(const json& j) {
  Reader r;
  GeneratorConfig c;
  if (!r.object(j, "config")) throw ValidationError(r.problems);
  r.reject_unknown(j, "config",
                   {"scenario", "image_width", "image_height", "master_seed", "max_count", "objects", "filter_chain",
                    "background", "count_distribution", "fire_probability", "detail_version", "density_sigma"});

  std::string scenario = std::string(to_string(c.scenario));
  r.get(j, "scenario", "config", scenario);
  if (auto s = scenario_from_string(scenario)) c.scenario = *s;
  else r.problem("config.scenario", "unknown scenario '" + scenario + "'");
  r.get(j, "image_width", "config", c.image_width);
  r.get(j, "image_height", "config", c.image_height);
  r.get(j, "master_seed", "config", c.master_seed);
  r.get(j, "max_count", "config", c.max_count);
  r.get(j, "fire_probability", "config", c.fire_probability);
  r.get(j, "detail_version", "config", c.detail_version);
  r.get(j, "density_sigma", "config", c.density_sigma);
  if (auto it = j.find("count_distribution"); it != j.end())
    c.count_distribution = read_distribution(r, *it, "config.count_distribution");

  if (auto it = j.find("objects"); it != j.end()) {
    if (!it->is_array()) r.problem("config.objects", "expected an array");
    else
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& o = (*it)[i];
        const std::string at = "config.objects[" + std::to_string(i) + "]";
        if (!r.object(o, at)) continue;
        r.reject_unknown(o, at, {"class", "width", "height", "rotation", "palette", "opacity", "count", "overlap", "avoid", "blur_sigma"});
        ObjectClassSpec s;
        std::string cls;
        r.get(o, "class", at, cls);
        if (auto k = object_class_from_string(cls)) s.object_class = *k;
        else r.problem(at + ".class", "unknown object class '" + cls + "'");
        if (o.contains("width")) s.width = read_distribution(r, o["width"], at + ".width");
        if (o.contains("height")) s.height = read_distribution(r, o["height"], at + ".height");
        if (o.contains("rotation")) s.rotation = read_distribution(r, o["rotation"], at + ".rotation");
        if (o.contains("opacity")) s.opacity = read_distribution(r, o["opacity"], at + ".opacity");
        if (o.contains("count")) s.count = read_distribution(r, o["count"], at + ".count");
        r.get(o, "blur_sigma", at, s.blur_sigma);
        if (auto p = o.find("palette"); p != o.end()) {
          if (!p->is_array()) r.problem(at + ".palette", "expected an array");
          else
            for (std::size_t k = 0; k < p->size(); ++k) {
              const std::string pat = at + ".palette[" + std::to_string(k) + "]";
              const json& e = (*p)[k];
              PaletteEntry entry;
              if (e.is_array()) {
                entry.rgb = rgb_from_json(r, e, pat);
              } else if (r.object(e, pat)) {
                r.reject_unknown(e, pat, {"rgb", "jitter"});
                if (e.contains("rgb")) entry.rgb = rgb_from_json(r, e["rgb"], pat + ".rgb");
                else r.problem(pat + ".rgb", "missing");
                if (e.contains("jitter")) entry.jitter = rgb_from_json(r, e["jitter"], pat + ".jitter");
              }
              s.palette.push_back(entry);
            }
        }
        if (auto ov = o.find("overlap"); ov != o.end() && r.object(*ov, at + ".overlap")) {
          r.reject_unknown(*ov, at + ".overlap", {"policy", "max_iou"});
          std::string policy = "forbid";
          r.get(*ov, "policy", at + ".overlap", policy);
          if (policy == "forbid") s.overlap = OverlapPolicy::forbid();
          else if (policy == "allow_within") {
            s.overlap = OverlapPolicy::allow_within(0.0);
            r.get(*ov, "max_iou", at + ".overlap", s.overlap.max_iou);
          } else r.problem(at + ".overlap.policy", "unknown policy '" + policy + "'");
        }
        if (auto av = o.find("avoid"); av != o.end()) {
          if (!av->is_array()) r.problem(at + ".avoid", "expected an array");
          else
            for (const auto& name : *av) {
              auto k = name.is_string() ? object_class_from_string(name.get<std::string>()) : std::nullopt;
              if (k) s.avoid.push_back(*k);
              else r.problem(at + ".avoid", "unknown object class " + name.dump());
            }
        }
        c.object_specs.push_back(std::move(s));
      }
  }

  if (auto it = j.find("filter_chain"); it != j.end()) {
    if (!it->is_array()) r.problem("config.filter_chain", "expected an array");
    else
      for (std::size_t i = 0; i < it->size(); ++i) {
        const json& f = (*it)[i];
        const std::string at = "config.filter_chain[" + std::to_string(i) + "]";
        if (!r.object(f, at)) continue;
        std::string kind;
        r.get(f, "kind", at, kind);
        FilterSpec spec;
        if (kind == "gaussian_blur") {
          r.reject_unknown(f, at, {"kind", "sigma"});
          spec = FilterSpec::gaussian_blur(0.0);
          r.get(f, "sigma", at, spec.sigma);
        } else if (kind == "smooth") {
          r.reject_unknown(f, at, {"kind"});
          spec = FilterSpec::smooth();
        } else if (kind == "edge_enhance") {
          r.reject_unknown(f, at, {"kind"});
          spec = FilterSpec::edge_enhance();
        } else {
          r.problem(at + ".kind", "unknown filter '" + kind + "'");
        }
        c.filter_chain.push_back(spec);
      }
  }

  if (auto it = j.find("background"); it != j.end() && r.object(*it, "config.background")) {
    std::string mode = "procedural";
    r.get(*it, "mode", "config.background", mode);
    if (mode == "procedural") {
      r.reject_unknown(*it, "config.background", {"mode", "base_rgb", "noise_amplitude"});
      c.background.mode = BackgroundSpec::Mode::Procedural;
      if (it->contains("base_rgb")) c.background.base_rgb = rgb_from_json(r, (*it)["base_rgb"], "config.background.base_rgb");
      r.get(*it, "noise_amplitude", "config.background", c.background.noise_amplitude);
    } else if (mode == "hybrid") {
      r.reject_unknown(*it, "config.background", {"mode", "directory"});
      c.background = BackgroundSpec{};
      c.background.mode = BackgroundSpec::Mode::Hybrid;
      r.get(*it, "directory", "config.background", c.background.directory);
    } else {
      r.problem("config.background.mode", "unknown mode '" + mode + "'");
    }
  }

  if (!r.problems.empty()) throw ValidationError(r.problems);
  require_valid(c);
  return c;
}

std::string canonical_config_text(const GeneratorConfig& config) {
  // nlohmann::json objects are std::map-backed, so dump() emits sorted keys.
  return config_to_json(config).dump();
}

std::string config_hash(const GeneratorConfig& config) {
  require_valid(config);
  return sha256_hex(canonical_config_text(config));
}

GeneratorConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({"config: malformed JSON (" + std::string(e.what()) + ")"});
  }
  return config_from_json(j);
}

void save_config(const GeneratorConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file '" + path.string() + "'");
  out << config_to_json(config).dump(2) << '\n';
  if (!out) throw IoError("failed writing config file '" + path.string() + "'");
}

namespace {

ObjectClassSpec make_spec(ObjectClass cls, DistributionSpec w, DistributionSpec h, DistributionSpec rot,
                          std::vector<PaletteEntry> palette, DistributionSpec opacity, DistributionSpec count,
                          OverlapPolicy overlap) {
  ObjectClassSpec s;
  s.object_class = cls;
  s.width = std::move(w);
  s.height = std::move(h);
  s.rotation = std::move(rot);
  s.palette = std::move(palette);
  s.opacity = std::move(opacity);
  s.count = std::move(count);
  s.overlap = overlap;
  return s;
}

}  // namespace

GeneratorConfig default_config(Scenario scenario) {
  using D = DistributionSpec;
  GeneratorConfig c;
  c.scenario = scenario;
  const auto free = OverlapPolicy::allow_within(1.0);

  if (scenario == Scenario::HouseCounting) {
    c.background.base_rgb = {128, 122, 96};
    c.background.noise_amplitude = 10;
    c.count_distribution = D::uniform_int(0, 38);
    c.fire_probability = 0.0;
    c.object_specs = {
        make_spec(ObjectClass::Grass, D::uniform_real(15, 40), D::uniform_real(10, 30), D::uniform_real(0, 180),
                  {{{96, 140, 64}, {12, 12, 10}}, {{120, 150, 80}, {12, 12, 10}}}, D::uniform_real(0.3, 0.6),
                  D::uniform_int(2, 6), free),
        make_spec(ObjectClass::Tree, D::uniform_real(3, 8), D::uniform_real(3, 8), D::uniform_real(0, 180),
                  {{{40, 90, 40}, {10, 14, 10}}, {{60, 110, 50}, {10, 14, 10}}}, D::constant(1), D::uniform_int(0, 12),
                  free),
        make_spec(ObjectClass::Fence, D::uniform_real(12, 24), D::uniform_real(10, 20), D::uniform_real(0, 90),
                  {{{90, 80, 70}, {10, 10, 10}}, {{160, 160, 150}, {10, 10, 10}}}, D::constant(1), D::uniform_int(0, 3),
                  free),
        make_spec(ObjectClass::Garden, D::uniform_real(8, 16), D::uniform_real(6, 12), D::uniform_real(0, 90),
                  {{{110, 85, 55}, {10, 10, 8}}, {{85, 120, 55}, {10, 10, 8}}}, D::constant(1), D::uniform_int(0, 3),
                  free),
        make_spec(ObjectClass::Pool, D::uniform_real(4, 7), D::uniform_real(3, 5), D::uniform_real(0, 90),
                  {{{45, 145, 215}, {10, 15, 20}}}, D::constant(1), D::uniform_int(0, 2), OverlapPolicy::forbid()),
        make_spec(ObjectClass::House, D::uniform_real(6, 11), D::uniform_real(5, 9), D::uniform_real(0, 90),
                  {{{170, 82, 52}, {12, 10, 10}},
                   {{150, 150, 150}, {12, 12, 12}},
                   {{196, 196, 205}, {10, 10, 10}},
                   {{120, 92, 64}, {10, 10, 10}}},
                  D::constant(1), D::constant(0), OverlapPolicy::forbid()),
    };
    c.object_specs.back().avoid = {ObjectClass::Pool};
  } else {
    c.background.base_rgb = {34, 85, 34};
    c.background.noise_amplitude = 12;
    c.count_distribution = D::constant(0);
    c.fire_probability = 0.5;
    c.object_specs = {
        make_spec(ObjectClass::Grass, D::uniform_real(15, 45), D::uniform_real(10, 35), D::uniform_real(0, 180),
                  {{{70, 110, 45}, {12, 14, 10}}, {{50, 95, 40}, {12, 14, 10}}}, D::uniform_real(0.3, 0.6),
                  D::uniform_int(2, 6), free),
        make_spec(ObjectClass::Tree, D::uniform_real(5, 12), D::uniform_real(5, 12), D::uniform_real(0, 180),
                  {{{20, 70, 25}, {8, 14, 8}}, {{35, 90, 35}, {8, 14, 8}}, {{55, 100, 40}, {8, 14, 8}}},
                  D::constant(1), D::uniform_int(40, 90), free),
        make_spec(ObjectClass::FireBlob, D::uniform_real(8, 20), D::uniform_real(8, 20), D::uniform_real(0, 180),
                  {{{220, 40, 20}, {15, 15, 10}}, {{250, 130, 20}, {5, 20, 10}}, {{255, 220, 70}, {0, 20, 20}}},
                  D::uniform_real(0.8, 1.0), D::uniform_int(1, 3), free),
        make_spec(ObjectClass::SmokePlume, D::uniform_real(12, 30), D::uniform_real(20, 45), D::uniform_real(-20, 20),
                  {{{175, 175, 175}, {15, 15, 15}}, {{210, 205, 200}, {15, 15, 15}}}, D::uniform_real(0.25, 0.5),
                  D::uniform_int(1, 2), free),
    };
    c.object_specs[2].blur_sigma = 1.5;
    c.object_specs[3].blur_sigma = 1.5;
  }
  return c;
}

}  // namespace aeroforge
