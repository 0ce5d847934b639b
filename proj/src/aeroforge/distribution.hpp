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

#include "aeroforge/rng.hpp"
#include "aeroforge/types.hpp"

namespace aeroforge {

// Draws one value inside the distribution's support. The spec is assumed valid.
double sample_from(const DistributionSpec& dist, RngStream& rng);

// Integral draw for count distributions: rounds half-to-even, then clamps to the support.
std::int64_t sample_count(const DistributionSpec& dist, RngStream& rng);

}  // namespace aeroforge
