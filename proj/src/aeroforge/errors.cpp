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

#include "aeroforge/errors.hpp"

namespace aeroforge {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(ErrorKind::Validation, join_problems(problems)), problems_(std::move(problems)) {}

PlacementExhausted::PlacementExhausted(std::string object_class, std::size_t placed_so_far)
    : Error(ErrorKind::PlacementExhausted,
            "placement exhausted for class '" + object_class + "' after placing " +
                std::to_string(placed_so_far) + " object(s)"),
      class_(std::move(object_class)),
      placed_(placed_so_far) {}

ImagePlacementExhausted::ImagePlacementExhausted(const PlacementExhausted& cause,
                                                 std::uint64_t image_index,
                                                 std::uint64_t image_seed)
    : PlacementExhausted(cause.object_class(), cause.placed_so_far()),
      index_(image_index),
      seed_(image_seed),
      message_(std::string(cause.what()) + " (image index " + std::to_string(image_index) +
               ", image seed " + std::to_string(image_seed) + ")") {}

}  // namespace aeroforge
