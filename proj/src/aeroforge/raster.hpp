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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "aeroforge/scene.hpp"
#include "aeroforge/types.hpp"

namespace aeroforge {

// Row-major 8-bit RGB.
struct Raster {
  int width = 0, height = 0;
  std::vector<std::uint8_t> pixels;

  Raster() = default;
  Raster(int w, int h, Rgb fill = {});

  Rgb at(int x, int y) const noexcept {
    const auto* p = &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    auto* p = &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }
  bool operator==(const Raster&) const = default;
};

// Fixed-point alpha: 1.0 == kAlphaOne.
inline constexpr std::uint32_t kAlphaOne = 1u << 16;

std::uint32_t quantize_alpha(double alpha) noexcept;

// n / d rounded half-to-even; d > 0.
std::int64_t div_round_half_even(std::int64_t n, std::int64_t d) noexcept;

// out = a*src + (1-a)*dst, one rounding (half-to-even).
std::uint8_t blend_channel(std::uint8_t src, std::uint8_t dst, std::uint32_t alpha_q16) noexcept;

// Pixels whose centers lie inside a shape, restricted to the canvas.
class CoverageMask {
 public:
  CoverageMask(int width, int height);

  void add(int x, int y) noexcept;
  void add_span(int y, int x_begin, int x_end) noexcept;  // [x_begin, x_end)
  bool covered(int x, int y) const noexcept { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  std::size_t count() const noexcept;
  bool empty() const noexcept { return y_min_ > y_max_; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    if (empty()) return;
    for (int y = y_min_; y <= y_max_; ++y)
      for (int x = x_min_; x <= x_max_; ++x)
        if (covered(x, y)) fn(x, y);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

 private:
  int width_, height_;
  int x_min_, y_min_, x_max_, y_max_;
  std::vector<std::uint8_t> bits_;
};

void rasterize_shape(const Shape& shape, CoverageMask& mask);
void rasterize_polygon(std::span<const Point> poly, CoverageMask& mask);
// Outline strokes of a shape's boundary (lines and dots have none).
void rasterize_outline(const Shape& shape, double width, CoverageMask& mask);

// Fill (if any) then outline, each blended once per covered pixel. Off-canvas geometry is clipped.
void draw_primitive(Raster& raster, const Primitive& primitive);

// Premultiplied fixed-point RGBA layer: color channels scaled by 255*kAlphaOne, alpha by kAlphaOne.
struct Layer {
  int width = 0, height = 0;
  std::vector<std::uint64_t> color;  // 3 per pixel
  std::vector<std::uint32_t> alpha;

  Layer(int w, int h);
  // Unpremultiplied foreground with a per-pixel coverage in [0, 1].
  static Layer from_foreground(const Raster& fg, std::span<const double> mask);
  bool transparent() const noexcept;
};

void draw_primitive(Layer& layer, const Primitive& primitive);
// `top` source-over `bottom`, in place on `bottom`.
void composite_over(const Layer& top, Layer& bottom);
// Layer source-over an opaque raster, in place.
void composite_layer(const Layer& layer, Raster& dst);

// Foreground over a photo using `fg_mask` as alpha. Dimensions must match.
Raster composite_background(const Raster& foreground, std::span<const double> fg_mask, const Raster& background_photo);

// Center-crop to the target aspect ratio, then nearest-neighbor rescale.
Raster fit_to(const Raster& photo, int width, int height);

// Normalized fixed-point Gaussian taps, radius ceil(3*sigma); taps sum to exactly kAlphaOne.
std::vector<std::uint32_t> gaussian_kernel(double sigma);

Raster apply_filter(const Raster& raster, const FilterSpec& filter);
void blur_layer(Layer& layer, double sigma);

// Uniform base color plus per-pixel grain in [-amplitude, amplitude] on all channels.
Raster procedural_background(int width, int height, const std::array<int, 3>& base, int amplitude, RngStream& rng);

// Sorted list of decodable-looking files (.png/.jpg/.jpeg) in a hybrid background directory.
std::vector<std::filesystem::path> list_background_photos(const std::filesystem::path& dir);

// Background, then foreground (blurred layer groups composited as units), then the filter chain.
// Hybrid mode loads the photo selected by the image's background stream.
Raster render_scene(const SceneGraph& scene, const GeneratorConfig& config);

// Same as render_scene with an explicit photo list (already listed and sorted).
Raster render_scene(const SceneGraph& scene, const GeneratorConfig& config,
                    std::span<const std::filesystem::path> photos);

}  // namespace aeroforge
