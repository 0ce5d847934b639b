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
#include <cstdint>
#include <vector>

#include "aeroforge/rng.hpp"
#include "doctest.h"

using namespace aeroforge;

TEST_SUITE("rng") {
  TEST_CASE("golden seed vector matches the published constant") {
    CHECK(derive_image_seed(0, 0) == 0xE220A8397B1DCDAFULL);
    static_assert(derive_image_seed(0, 0) == 0xE220A8397B1DCDAFULL);
  }

  TEST_CASE("derived seeds match an independent Python implementation") {
    CHECK(derive_image_seed(0, 1) == 0x6E789E6AA1B965F4ULL);
    CHECK(derive_image_seed(1, 0) == 0x910A2DEC89025CC1ULL);
    CHECK(derive_image_seed(1, 1) == 0xE99FF867DBF682C9ULL);
    CHECK(derive_image_seed(42, 7) == 0xCBBD05C7DE73A889ULL);
  }

  TEST_CASE("RngStream reproduces the SplitMix64 reference sequence for seed 0") {
    RngStream r(0);
    CHECK(r.next_u64() == 0xE220A8397B1DCDAFULL);
    CHECK(r.next_u64() == 0x6E789E6AA1B965F4ULL);
    CHECK(r.next_u64() == 0x06C45D188009454FULL);
    CHECK(r.next_u64() == 0xF88BB8A8724C81ECULL);
  }

  TEST_CASE("index 0 and 1 differ for 10^4 master seeds") {
    for (std::uint64_t s = 0; s < 10000; ++s) REQUIRE(derive_image_seed(s, 0) != derive_image_seed(s, 1));
  }

  TEST_CASE("purity") {
    for (std::uint64_t s : {0ULL, 1ULL, 99ULL, ~0ULL}) CHECK(derive_image_seed(s, 5) == derive_image_seed(s, 5));
  }

  TEST_CASE("no collisions among 10^5 image indices") {
    for (std::uint64_t master : {0ULL, 1ULL, 0xDEADBEEFULL}) {
      std::vector<std::uint64_t> seeds;
      seeds.reserve(100000);
      for (std::uint64_t i = 0; i < 100000; ++i) seeds.push_back(derive_image_seed(master, i));
      std::sort(seeds.begin(), seeds.end());
      CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
    }
  }

  TEST_CASE("fork does not advance the parent and matches the reference value") {
    RngStream parent(0);
    const RngStream child = parent.fork(StreamTag::Scene);
    CHECK(child.state() == 0xB55D84F17821FB1DULL);
    CHECK(parent.state() == 0);
    CHECK(RngStream(123).fork(0x1000).state() == 0xEAB1D572100FE206ULL);
    CHECK(parent.fork(StreamTag::Scene).state() != parent.fork(StreamTag::Background).state());
  }

  TEST_CASE("uniform01 stays in [0, 1) and below() in range") {
    RngStream r(9);
    for (int i = 0; i < 100000; ++i) {
      const double u = r.uniform01();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      REQUIRE(r.below(7) < 7);
      const auto k = r.uniform_int(-3, 3);
      REQUIRE(k >= -3);
      REQUIRE(k <= 3);
    }
  }

  TEST_CASE("below() is unbiased: chi-square over 6 bins") {
    RngStream r(2024);
    const int n = 60000;
    std::vector<int> bins(6);
    for (int i = 0; i < n; ++i) ++bins[r.below(6)];
    double chi2 = 0;
    for (int b : bins) chi2 += (b - n / 6.0) * (b - n / 6.0) / (n / 6.0);
    CHECK(chi2 < 20.5);  // p = 0.001 critical value for 5 degrees of freedom
  }

  TEST_CASE("bernoulli consumes exactly one draw even at p = 0 and p = 1") {
    for (double p : {0.0, 1.0, 0.3}) {
      RngStream a(5), b(5);
      a.bernoulli(p);
      b.next_u64();
      CHECK(a.state() == b.state());
    }
  }

  TEST_CASE("standard normal moments") {
    RngStream r(77);
    const int n = 100000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      const double z = r.standard_normal();
      sum += z;
      sq += z * z;
    }
    const double mean = sum / n, var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
  }
}
