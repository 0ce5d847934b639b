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
#include <cctype>
#include <cmath>

#include "aeroforge/errors.hpp"
#include "aeroforge/image_io.hpp"
#include "aeroforge/raster.hpp"

namespace aeroforge {

namespace {

// Separable convolution with clamp-to-border. `get(x, y, ch)` reads the source; results are
// returned scaled by kAlphaOne^2 for the caller to round once.
template <class Get>
std::vector<std::uint64_t> convolve_separable(int width, int height, int channels, const std::vector<std::uint32_t>& taps,
                                              Get&& get) {
  const int radius = static_cast<int>(taps.size() / 2);
  const std::size_t n = static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint64_t> horizontal(n), out(n);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int ch = 0; ch < channels; ++ch) {
        std::uint64_t acc = 0;
        for (int k = -radius; k <= radius; ++k) acc += std::uint64_t{taps[k + radius]} * get(std::clamp(x + k, 0, width - 1), y, ch);
        horizontal[(static_cast<std::size_t>(y) * width + x) * channels + ch] = acc;
      }
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int ch = 0; ch < channels; ++ch) {
        std::uint64_t acc = 0;
        for (int k = -radius; k <= radius; ++k)
          acc += std::uint64_t{taps[k + radius]} *
                 horizontal[(static_cast<std::size_t>(std::clamp(y + k, 0, height - 1)) * width + x) * channels + ch];
        out[(static_cast<std::size_t>(y) * width + x) * channels + ch] = acc;
      }
  return out;
}

// Rounds v / 2^32 half-to-even for values that may not fit in int64 after scaling.
std::uint64_t shift_round_half_even(std::uint64_t v) {
  const std::uint64_t q = v >> 32;
  const std::uint64_t r = v & 0xFFFFFFFFULL;
  const std::uint64_t half = 1ULL << 31;
  return (r > half || (r == half && (q & 1))) ? q + 1 : q;
}

Raster gaussian_blur(const Raster& src, double sigma) {
  if (!(sigma > 0)) return src;
  const auto taps = gaussian_kernel(sigma);
  const auto acc = convolve_separable(src.width, src.height, 3, taps, [&](int x, int y, int ch) {
    return std::uint64_t{src.pixels[(static_cast<std::size_t>(y) * src.width + x) * 3 + ch]};
  });
  Raster out(src.width, src.height);
  for (std::size_t i = 0; i < acc.size(); ++i) out.pixels[i] = static_cast<std::uint8_t>(std::min<std::uint64_t>(255, shift_round_half_even(acc[i])));
  return out;
}

// 3x3 stencil with integer weights, divided by `divisor`, clamp-to-border.
Raster stencil3(const Raster& src, const int (&w)[3][3], int divisor) {
  Raster out(src.width, src.height);
  for (int y = 0; y < src.height; ++y)
    for (int x = 0; x < src.width; ++x)
      for (int ch = 0; ch < 3; ++ch) {
        std::int64_t acc = 0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int sx = std::clamp(x + dx, 0, src.width - 1), sy = std::clamp(y + dy, 0, src.height - 1);
            acc += w[dy + 1][dx + 1] * src.pixels[(static_cast<std::size_t>(sy) * src.width + sx) * 3 + ch];
          }
        out.pixels[(static_cast<std::size_t>(y) * src.width + x) * 3 + ch] =
            static_cast<std::uint8_t>(std::clamp<std::int64_t>(div_round_half_even(acc, divisor), 0, 255));
      }
  return out;
}

constexpr int kSmooth[3][3] = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
// Unsharp mask 2*x - box3(x), i.e. (17*center - 8 neighbours) / 9.
constexpr int kEdgeEnhance[3][3] = {{-1, -1, -1}, {-1, 17, -1}, {-1, -1, -1}};

}  // namespace

std::vector<std::uint32_t> gaussian_kernel(double sigma) {
  if (!(sigma > 0)) return {kAlphaOne};
  const int radius = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0;
  for (int i = -radius; i <= radius; ++i) sum += w[i + radius] = std::exp(-(i * i) / (2 * sigma * sigma));
  std::vector<std::uint32_t> taps(w.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) total += taps[i] = static_cast<std::uint32_t>(std::nearbyint(w[i] / sum * kAlphaOne));
  taps[static_cast<std::size_t>(radius)] += static_cast<std::uint32_t>(static_cast<std::int64_t>(kAlphaOne) - total);
  return taps;
}

Raster apply_filter(const Raster& raster, const FilterSpec& filter) {
  switch (filter.kind) {
    case FilterSpec::Kind::GaussianBlur: return gaussian_blur(raster, filter.sigma);
    case FilterSpec::Kind::Smooth: return stencil3(raster, kSmooth, 9);
    case FilterSpec::Kind::EdgeEnhance: return stencil3(raster, kEdgeEnhance, 9);
  }
  return raster;
}

void blur_layer(Layer& layer, double sigma) {
  if (!(sigma > 0)) return;
  const auto taps = gaussian_kernel(sigma);
  // Premultiplied color and alpha are blurred with the same kernel, so color stays <= 255*alpha.
  const auto acc = convolve_separable(layer.width, layer.height, 4, taps, [&](int x, int y, int ch) -> std::uint64_t {
    const std::size_t i = static_cast<std::size_t>(y) * layer.width + x;
    return ch < 3 ? layer.color[i * 3 + ch] : layer.alpha[i];
  });
  for (std::size_t i = 0; i < layer.alpha.size(); ++i) {
    for (int ch = 0; ch < 3; ++ch) layer.color[i * 3 + ch] = shift_round_half_even(acc[i * 4 + ch]);
    layer.alpha[i] = static_cast<std::uint32_t>(std::min<std::uint64_t>(kAlphaOne, shift_round_half_even(acc[i * 4 + 3])));
    for (int ch = 0; ch < 3; ++ch)
      layer.color[i * 3 + ch] = std::min<std::uint64_t>(layer.color[i * 3 + ch], std::uint64_t{255} * layer.alpha[i]);
  }
}

Raster procedural_background(int width, int height, const std::array<int, 3>& base, int amplitude, RngStream& rng) {
  Raster r(width, height,
           {static_cast<std::uint8_t>(base[0]), static_cast<std::uint8_t>(base[1]), static_cast<std::uint8_t>(base[2])});
  if (amplitude <= 0) return r;
  for (std::size_t i = 0; i < r.pixels.size(); i += 3) {
    const auto grain = rng.uniform_int(-amplitude, amplitude);
    for (int ch = 0; ch < 3; ++ch)
      r.pixels[i + ch] = static_cast<std::uint8_t>(std::clamp<std::int64_t>(base[ch] + grain, 0, 255));
  }
  return r;
}

std::vector<std::filesystem::path> list_background_photos(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw HybridSourceMissing("'" + dir.string() + "' is not a directory");
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.push_back(entry.path());
  }
  if (ec) throw HybridSourceMissing("cannot list '" + dir.string() + "': " + ec.message());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  if (out.empty()) throw HybridSourceMissing("no .png/.jpg images in '" + dir.string() + "'");
  return out;
}

Raster render_scene(const SceneGraph& scene, const GeneratorConfig& config) {
  if (config.background.mode == BackgroundSpec::Mode::Hybrid) {
    const auto photos = list_background_photos(config.background.directory);
    return render_scene(scene, config, photos);
  }
  return render_scene(scene, config, {});
}

Raster render_scene(const SceneGraph& scene, const GeneratorConfig& config, std::span<const std::filesystem::path> photos) {
  RngStream bg_rng = RngStream(scene.image_seed).fork(StreamTag::Background);
  Raster base;
  if (config.background.mode == BackgroundSpec::Mode::Hybrid) {
    if (photos.empty()) throw HybridSourceMissing("background directory '" + config.background.directory + "' is empty");
    const auto& photo_path = photos[bg_rng.next_u64() % photos.size()];
    Raster photo;
    try {
      photo = read_image(photo_path);
    } catch (const IoError& e) {
      throw HybridSourceMissing(e.what());
    }
    base = fit_to(photo, scene.width, scene.height);
  } else {
    base = procedural_background(scene.width, scene.height, config.background.base_rgb, config.background.noise_amplitude, bg_rng);
  }

  auto blur_of = [&](ObjectClass c) {
    const auto* spec = config.find_spec(c);
    return spec ? spec->blur_sigma : 0.0;
  };

  Layer foreground(scene.width, scene.height);
  for (std::size_t i = 0; i < scene.objects.size();) {
    const double sigma = blur_of(scene.objects[i].object_class);
    if (sigma <= 0) {
      for (const auto& part : scene.objects[i].parts) draw_primitive(foreground, part);
      ++i;
      continue;
    }
    // Consecutive objects sharing a blur radius are blurred together as one layer.
    Layer group(scene.width, scene.height);
    for (; i < scene.objects.size() && blur_of(scene.objects[i].object_class) == sigma; ++i)
      for (const auto& part : scene.objects[i].parts) draw_primitive(group, part);
    blur_layer(group, sigma);
    composite_over(group, foreground);
  }
  composite_layer(foreground, base);

  for (const auto& f : config.filter_chain) base = apply_filter(base, f);
  return base;
}

}  // namespace aeroforge
