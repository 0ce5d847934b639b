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

#include <cmath>
#include <map>

#include "aeroforge/distribution.hpp"
#include "doctest.h"

using namespace aeroforge;
using D = DistributionSpec;

TEST_SUITE("distribution") {
  TEST_CASE("Constant(5) -> 5") {
    RngStream r(1);
    for (int i = 0; i < 10; ++i) {
      CHECK(sample_from(D::constant(5), r) == 5.0);
      CHECK(sample_count(D::constant(5), r) == 5);
    }
  }

  TEST_CASE("UniformInt[0,38]: 10^5 draws have mean within 3 standard errors of 19") {
    // Discrete uniform on 39 values: variance (39^2 - 1) / 12.
    const double n = 100000, se = std::sqrt((39.0 * 39.0 - 1.0) / 12.0 / n);
    RngStream r(12345);
    double sum = 0;
    std::map<std::int64_t, int> seen;
    for (int i = 0; i < n; ++i) {
      const auto v = sample_count(D::uniform_int(0, 38), r);
      REQUIRE(v >= 0);
      REQUIRE(v <= 38);
      sum += static_cast<double>(v);
      ++seen[v];
    }
    CHECK(std::abs(sum / n - 19.0) < 3 * se);
    CHECK(seen.size() == 39);
  }

  TEST_CASE("Categorical with one value returns it for any positive weight") {
    RngStream r(3);
    for (double w : {1e-9, 0.5, 7.0}) CHECK(sample_from(D::categorical({4.25}, {w}), r) == 4.25);
  }

  TEST_CASE("Categorical obeys weights") {
    RngStream r(4);
    int hits = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) hits += sample_from(D::categorical({1, 2}, {1, 3}), r) == 2.0;
    CHECK(std::abs(hits / double(n) - 0.75) < 4 * std::sqrt(0.75 * 0.25 / n));
  }

  TEST_CASE("draws stay inside the support") {
    RngStream r(8);
    const D specs[] = {D::uniform_real(2, 3), D::normal(0, 10, -1, 1), D::uniform_int(-4, 4),
                       D::categorical({-2, 9}, {1, 1})};
    for (const auto& d : specs)
      for (int i = 0; i < 5000; ++i) {
        const double v = sample_from(d, r);
        REQUIRE(v >= d.support_min());
        REQUIRE(v <= d.support_max());
      }
  }

  TEST_CASE("sample_count rounds half-to-even and clamps to the support") {
    RngStream r(1);
    CHECK(sample_count(D::constant(2.5), r) == 2);
    CHECK(sample_count(D::constant(3.5), r) == 4);
    for (int i = 0; i < 2000; ++i) {
      const auto v = sample_count(D::uniform_real(0.6, 1.4), r);
      REQUIRE(v == 1);
    }
  }

  TEST_CASE("support and integrality") {
    CHECK(D::uniform_int(1, 5).integral());
    CHECK_FALSE(D::uniform_real(1, 5).integral());
    CHECK(D::constant(3).integral());
    CHECK_FALSE(D::constant(3.5).integral());
    CHECK(D::categorical({1, 7}, {1, 1}).support_max() == 7);
    CHECK(D::normal(0, 1, -2, 2).support_min() == -2);
  }
}
