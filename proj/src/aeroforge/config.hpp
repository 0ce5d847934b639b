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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "aeroforge/types.hpp"

namespace aeroforge {

// Field-specific problems; empty when the config is valid.
std::vector<std::string> validate_config(const GeneratorConfig& config);
// Throws ValidationError listing every problem.
void require_valid(const GeneratorConfig& config);

nlohmann::json config_to_json(const GeneratorConfig& config);
// Missing keys take defaults; unknown keys and type mismatches are validation errors.
// The result is validated before it is returned.
GeneratorConfig config_from_json(const nlohmann::json& j);

// Sorted keys, no insignificant whitespace.
std::string canonical_config_text(const GeneratorConfig& config);
// SHA-256 of canonical_config_text, 64 lowercase hex digits. Validates first.
std::string config_hash(const GeneratorConfig& config);

GeneratorConfig load_config(const std::filesystem::path& path);
void save_config(const GeneratorConfig& config, const std::filesystem::path& path);

GeneratorConfig default_config(Scenario scenario);

nlohmann::json distribution_to_json(const DistributionSpec& d);
DistributionSpec distribution_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace aeroforge
