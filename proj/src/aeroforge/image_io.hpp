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
#include <filesystem>
#include <vector>

#include "aeroforge/raster.hpp"

namespace aeroforge {

// 8-bit RGB PNG, no interlacing, zlib level 6, no timestamp or text chunks.
// Output bytes depend only on the pixels (and the linked zlib).
std::vector<std::uint8_t> encode_png(const Raster& raster);
void write_png(const std::filesystem::path& path, const Raster& raster);

// Decodes PNG (any bit depth / color type) or baseline JPEG to 8-bit RGB.
// Throws IoError when the file is missing or cannot be decoded.
Raster read_image(const std::filesystem::path& path);

// Reads just the header; {width, height}.
std::pair<int, int> read_png_size(const std::filesystem::path& path);

}  // namespace aeroforge
