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

#include "aeroforge/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aeroforge {

namespace {

constexpr int kNormalRedraws = 64;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double DistributionSpec::support_min() const {
  return std::visit(
      Overloaded{[](const ConstantDist& d) { return d.value; },
                 [](const UniformIntDist& d) { return static_cast<double>(d.min); },
                 [](const UniformRealDist& d) { return d.min; },
                 [](const NormalDist& d) { return d.min; },
                 [](const CategoricalDist& d) {
                   return d.values.empty() ? 0.0 : *std::min_element(d.values.begin(), d.values.end());
                 }},
      kind);
}

double DistributionSpec::support_max() const {
  return std::visit(
      Overloaded{[](const ConstantDist& d) { return d.value; },
                 [](const UniformIntDist& d) { return static_cast<double>(d.max); },
                 [](const UniformRealDist& d) { return d.max; },
                 [](const NormalDist& d) { return d.max; },
                 [](const CategoricalDist& d) {
                   return d.values.empty() ? 0.0 : *std::max_element(d.values.begin(), d.values.end());
                 }},
      kind);
}

bool DistributionSpec::integral() const {
  auto is_int = [](double v) { return std::isfinite(v) && std::floor(v) == v; };
  return std::visit(
      Overloaded{[&](const ConstantDist& d) { return is_int(d.value); },
                 [](const UniformIntDist&) { return true; },
                 [](const UniformRealDist&) { return false; },
                 // Normal draws are rounded by sample_count; integral bounds keep the result inside.
                 [&](const NormalDist& d) { return is_int(d.min) && is_int(d.max); },
                 [&](const CategoricalDist& d) { return std::all_of(d.values.begin(), d.values.end(), is_int); }},
      kind);
}

double sample_from(const DistributionSpec& dist, RngStream& rng) {
  return std::visit(
      Overloaded{
          [](const ConstantDist& d) { return d.value; },
          [&](const UniformIntDist& d) { return static_cast<double>(rng.uniform_int(d.min, d.max)); },
          [&](const UniformRealDist& d) { return rng.uniform_real(d.min, d.max); },
          [&](const NormalDist& d) {
            if (d.stddev == 0.0) return std::clamp(d.mean, d.min, d.max);
            double v = 0.0;
            for (int i = 0; i < kNormalRedraws; ++i) {
              v = d.mean + d.stddev * rng.standard_normal();
              if (v >= d.min && v <= d.max) return v;
            }
            return std::clamp(v, d.min, d.max);
          },
          [&](const CategoricalDist& d) {
            const double total = std::accumulate(d.weights.begin(), d.weights.end(), 0.0);
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            std::size_t last_positive = 0;
            for (std::size_t i = 0; i < d.values.size(); ++i) {
              if (d.weights[i] <= 0.0) continue;
              last_positive = i;
              acc += d.weights[i];
              if (target < acc) return d.values[i];
            }
            return d.values[last_positive];
          }},
      dist.kind);
}

std::int64_t sample_count(const DistributionSpec& dist, RngStream& rng) {
  const double v = std::nearbyint(sample_from(dist, rng));
  const double lo = std::ceil(dist.support_min());
  const double hi = std::floor(dist.support_max());
  if (lo > hi) return static_cast<std::int64_t>(v);  // support holds no integer, e.g. Constant(2.5)
  return static_cast<std::int64_t>(std::clamp(v, lo, hi));
}

}  // namespace aeroforge
