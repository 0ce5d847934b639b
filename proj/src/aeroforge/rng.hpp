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

#pragma once

#include <cstdint>

namespace aeroforge {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Per-image seed: mix64((master ^ (index * gamma)) + gamma).
// Injective in `index` for a fixed master seed; derive_image_seed(0, 0) == 0xE220A8397B1DCDAF.
constexpr std::uint64_t derive_image_seed(std::uint64_t master_seed, std::uint64_t image_index) noexcept {
  return mix64((master_seed ^ (image_index * kGoldenGamma)) + kGoldenGamma);
}

// Named sub-streams of an image stream. Values are part of the on-disk reproducibility
// contract: changing them changes every generated dataset.
enum class StreamTag : std::uint64_t {
  Scene = 0x100,       // fire decision, house count
  Background = 0x200,  // procedural noise, hybrid photo choice
  Balance = 0x300,     // balanced-quota permutation (keyed on master seed)
  Split = 0x400,       // train/val shuffling (keyed on split seed)
  ObjectClassBase = 0x1000  // + ObjectClass ordinal
};

// SplitMix64 generator. All distribution sampling is done here so draws are bit-identical
// on every platform (std:: distributions are implementation-defined).
class RngStream {
 public:
  explicit constexpr RngStream(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Independent child stream; does not advance this stream.
  constexpr RngStream fork(std::uint64_t tag) const noexcept {
    return RngStream(mix64(state_ ^ mix64(tag * kGoldenGamma + 1)));
  }
  RngStream fork(StreamTag tag) const noexcept { return fork(static_cast<std::uint64_t>(tag)); }

  // [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;
  double uniform_real(double lo, double hi) noexcept;
  // Inclusive [lo, hi], unbiased (Lemire's multiply-shift with rejection).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
  std::uint64_t below(std::uint64_t bound) noexcept;
  bool bernoulli(double p) noexcept;
  // Standard normal via Marsaglia's polar method; no cached spare so the stream stays stateless.
  double standard_normal() noexcept;

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace aeroforge
