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

#include "aeroforge/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aeroforge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr int kOutlineSegments = 32;

Polygon rect_polygon(const Rect& r) { return rotated_rect({r.x + r.w / 2, r.y + r.h / 2}, r.w, r.h, r.degrees); }

void rasterize_ellipse(const Ellipse& e, CoverageMask& mask) {
  if (!(e.rx > 0) || !(e.ry > 0) || !std::isfinite(e.center.x) || !std::isfinite(e.center.y)) return;
  const double rad = e.degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad), s = std::sin(rad);
  const double ex = std::sqrt(e.rx * e.rx * c * c + e.ry * e.ry * s * s);
  const double ey = std::sqrt(e.rx * e.rx * s * s + e.ry * e.ry * c * c);
  const int x0 = std::max(0, static_cast<int>(std::floor(e.center.x - ex)));
  const int x1 = std::min(mask.width() - 1, static_cast<int>(std::ceil(e.center.x + ex)));
  const int y0 = std::max(0, static_cast<int>(std::floor(e.center.y - ey)));
  const int y1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(e.center.y + ey)));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - e.center.x, dy = y + 0.5 - e.center.y;
      const double u = (dx * c + dy * s) / e.rx;
      const double v = (-dx * s + dy * c) / e.ry;
      if (u * u + v * v <= 1.0) mask.add(x, y);
    }
}

// Liang-Barsky clip of segment ab to [x0, x1] x [y0, y1]; false when nothing remains.
bool clip_segment(Point& a, Point& b, double x0, double y0, double x1, double y1) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) t0 = std::max(t0, t);
    else t1 = std::min(t1, t);
    if (t0 > t1) return false;
  }
  const Point start = a;
  a = {start.x + t0 * dx, start.y + t0 * dy};
  b = {start.x + t1 * dx, start.y + t1 * dy};
  return true;
}

void rasterize_thin_line(Point a, Point b, CoverageMask& mask) {
  if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) || !std::isfinite(b.y)) return;
  if (!clip_segment(a, b, -1.0, -1.0, mask.width() + 1.0, mask.height() + 1.0)) return;
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double steps = std::ceil(std::max(std::abs(dx), std::abs(dy)));
  if (!std::isfinite(steps)) return;
  const auto n = static_cast<long>(std::min(steps, 1e6));
  for (long k = 0; k <= n; ++k) {
    const double t = n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
    const double x = std::floor(a.x + dx * t), y = std::floor(a.y + dy * t);
    if (x >= 0 && y >= 0 && x < mask.width() && y < mask.height()) mask.add(static_cast<int>(x), static_cast<int>(y));
  }
}

void rasterize_line(const Line& l, CoverageMask& mask) {
  const double len = std::hypot(l.to.x - l.from.x, l.to.y - l.from.y);
  if (l.width <= 1.0 || len == 0.0) {
    rasterize_thin_line(l.from, l.to, mask);
    return;
  }
  const double nx = -(l.to.y - l.from.y) / len * l.width / 2;
  const double ny = (l.to.x - l.from.x) / len * l.width / 2;
  const Polygon quad = {{l.from.x + nx, l.from.y + ny},
                        {l.to.x + nx, l.to.y + ny},
                        {l.to.x - nx, l.to.y - ny},
                        {l.from.x - nx, l.from.y - ny}};
  rasterize_polygon(quad, mask);
}

void outline_polygon(const Polygon& p, double width, CoverageMask& mask) {
  for (std::size_t i = 0; i < p.size(); ++i) rasterize_line({p[i], p[(i + 1) % p.size()], width}, mask);
}

std::int64_t blend_premultiplied(std::int64_t p_top, std::uint32_t a_top, std::int64_t p_bottom) {
  return p_top + div_round_half_even(static_cast<std::int64_t>(kAlphaOne - a_top) * p_bottom, kAlphaOne);
}

}  // namespace

Raster::Raster(int w, int h, Rgb fill) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3) {
  for (std::size_t i = 0; i < pixels.size(); i += 3) {
    pixels[i] = fill.r;
    pixels[i + 1] = fill.g;
    pixels[i + 2] = fill.b;
  }
}

std::uint32_t quantize_alpha(double alpha) noexcept {
  if (!(alpha > 0)) return 0;
  if (alpha >= 1) return kAlphaOne;
  return static_cast<std::uint32_t>(std::nearbyint(alpha * kAlphaOne));
}

std::int64_t div_round_half_even(std::int64_t n, std::int64_t d) noexcept {
  std::int64_t q = n / d;
  std::int64_t r = n % d;
  if (r < 0) {  // floor division
    q -= 1;
    r += d;
  }
  const std::int64_t twice = 2 * r;
  if (twice > d || (twice == d && (q & 1))) ++q;
  return q;
}

std::uint8_t blend_channel(std::uint8_t src, std::uint8_t dst, std::uint32_t a) noexcept {
  const std::int64_t n = static_cast<std::int64_t>(a) * src + static_cast<std::int64_t>(kAlphaOne - a) * dst;
  return static_cast<std::uint8_t>(div_round_half_even(n, kAlphaOne));
}

CoverageMask::CoverageMask(int width, int height)
    : width_(width), height_(height), x_min_(width), y_min_(height), x_max_(-1), y_max_(-1),
      bits_(static_cast<std::size_t>(width) * height, 0) {}

void CoverageMask::add(int x, int y) noexcept {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  bits_[static_cast<std::size_t>(y) * width_ + x] = 1;
  x_min_ = std::min(x_min_, x);
  x_max_ = std::max(x_max_, x);
  y_min_ = std::min(y_min_, y);
  y_max_ = std::max(y_max_, y);
}

void CoverageMask::add_span(int y, int x_begin, int x_end) noexcept {
  if (y < 0 || y >= height_) return;
  x_begin = std::max(x_begin, 0);
  x_end = std::min(x_end, width_);
  if (x_begin >= x_end) return;
  std::fill_n(bits_.begin() + static_cast<std::ptrdiff_t>(y) * width_ + x_begin, x_end - x_begin, 1);
  x_min_ = std::min(x_min_, x_begin);
  x_max_ = std::max(x_max_, x_end - 1);
  y_min_ = std::min(y_min_, y);
  y_max_ = std::max(y_max_, y);
}

std::size_t CoverageMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void rasterize_polygon(std::span<const Point> poly, CoverageMask& mask) {
  if (poly.size() < 3) return;
  for (const auto& p : poly)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
  const Box b = bounding_box(poly);
  const int y0 = std::max(0, static_cast<int>(std::floor(b.y_min)));
  const int y1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(b.y_max)));
  std::vector<double> xs;
  for (int y = y0; y <= y1; ++y) {
    const double yc = y + 0.5;
    xs.clear();
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % n];
      if ((p.y <= yc && yc < q.y) || (q.y <= yc && yc < p.y)) xs.push_back(p.x + (yc - p.y) * (q.x - p.x) / (q.y - p.y));
    }
    std::sort(xs.begin(), xs.end());
    // Even-odd spans; a pixel is inside when its center x + 0.5 lies in [xa, xb).
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const double xa = std::clamp(std::ceil(xs[k] - 0.5), -1.0, mask.width() + 1.0);
      const double xb = std::clamp(std::ceil(xs[k + 1] - 0.5), -1.0, mask.width() + 1.0);
      mask.add_span(y, static_cast<int>(xa), static_cast<int>(xb));
    }
  }
}

void rasterize_shape(const Shape& shape, CoverageMask& mask) {
  std::visit(Overloaded{[&](const Dot& d) {
                          if (!std::isfinite(d.at.x) || !std::isfinite(d.at.y)) return;
                          if (d.radius <= 0.5) {
                            const double x = std::floor(d.at.x), y = std::floor(d.at.y);
                            if (x >= 0 && y >= 0 && x < mask.width() && y < mask.height())
                              mask.add(static_cast<int>(x), static_cast<int>(y));
                          } else {
                            rasterize_ellipse({d.at, d.radius, d.radius, 0}, mask);
                          }
                        },
                        [&](const Line& l) { rasterize_line(l, mask); },
                        [&](const Rect& r) { rasterize_polygon(rect_polygon(r), mask); },
                        [&](const PolygonShape& p) { rasterize_polygon(p.vertices, mask); },
                        [&](const Circle& c) { rasterize_ellipse({c.center, c.radius, c.radius, 0}, mask); },
                        [&](const Ellipse& e) { rasterize_ellipse(e, mask); }},
             shape);
}

void rasterize_outline(const Shape& shape, double width, CoverageMask& mask) {
  std::visit(Overloaded{[](const Dot&) {}, [](const Line&) {},
                        [&](const Rect& r) { outline_polygon(rect_polygon(r), width, mask); },
                        [&](const PolygonShape& p) { outline_polygon(p.vertices, width, mask); },
                        [&](const Circle& c) {
                          outline_polygon(ellipse_polygon(c.center, c.radius, c.radius, 0, kOutlineSegments), width, mask);
                        },
                        [&](const Ellipse& e) {
                          outline_polygon(ellipse_polygon(e.center, e.rx, e.ry, e.degrees, kOutlineSegments), width, mask);
                        }},
             shape);
}

namespace {

template <class Target, class BlendFn>
void draw_with(Target& target, const Primitive& prim, BlendFn&& blend) {
  const std::uint32_t a = quantize_alpha(prim.style.opacity);
  if (a == 0) return;
  if (prim.style.fill) {
    CoverageMask mask(target.width, target.height);
    rasterize_shape(prim.shape, mask);
    mask.for_each([&](int x, int y) { blend(target, x, y, *prim.style.fill, a); });
  }
  if (prim.style.outline && prim.style.outline->width > 0) {
    CoverageMask mask(target.width, target.height);
    rasterize_outline(prim.shape, prim.style.outline->width, mask);
    mask.for_each([&](int x, int y) { blend(target, x, y, prim.style.outline->color, a); });
  }
}

}  // namespace

void draw_primitive(Raster& raster, const Primitive& primitive) {
  draw_with(raster, primitive, [](Raster& r, int x, int y, Rgb c, std::uint32_t a) {
    const Rgb d = r.at(x, y);
    r.set(x, y, {blend_channel(c.r, d.r, a), blend_channel(c.g, d.g, a), blend_channel(c.b, d.b, a)});
  });
}

Layer::Layer(int w, int h)
    : width(w), height(h), color(static_cast<std::size_t>(w) * h * 3, 0), alpha(static_cast<std::size_t>(w) * h, 0) {}

Layer Layer::from_foreground(const Raster& fg, std::span<const double> mask) {
  Layer l(fg.width, fg.height);
  for (std::size_t i = 0; i < l.alpha.size(); ++i) {
    const std::uint32_t a = quantize_alpha(i < mask.size() ? mask[i] : 0.0);
    l.alpha[i] = a;
    for (int ch = 0; ch < 3; ++ch) l.color[i * 3 + ch] = static_cast<std::uint64_t>(a) * fg.pixels[i * 3 + ch];
  }
  return l;
}

bool Layer::transparent() const noexcept {
  return std::all_of(alpha.begin(), alpha.end(), [](std::uint32_t a) { return a == 0; });
}

void draw_primitive(Layer& layer, const Primitive& primitive) {
  draw_with(layer, primitive, [](Layer& l, int x, int y, Rgb c, std::uint32_t a) {
    const std::size_t i = static_cast<std::size_t>(y) * l.width + x;
    const std::uint8_t src[3] = {c.r, c.g, c.b};
    for (int ch = 0; ch < 3; ++ch)
      l.color[i * 3 + ch] = static_cast<std::uint64_t>(
          blend_premultiplied(static_cast<std::int64_t>(a) * src[ch], a, static_cast<std::int64_t>(l.color[i * 3 + ch])));
    l.alpha[i] = static_cast<std::uint32_t>(blend_premultiplied(a, a, l.alpha[i]));
  });
}

void composite_over(const Layer& top, Layer& bottom) {
  for (std::size_t i = 0; i < bottom.alpha.size(); ++i) {
    const std::uint32_t a = top.alpha[i];
    if (a == 0) continue;
    for (int ch = 0; ch < 3; ++ch)
      bottom.color[i * 3 + ch] = static_cast<std::uint64_t>(blend_premultiplied(
          static_cast<std::int64_t>(top.color[i * 3 + ch]), a, static_cast<std::int64_t>(bottom.color[i * 3 + ch])));
    bottom.alpha[i] = static_cast<std::uint32_t>(blend_premultiplied(a, a, bottom.alpha[i]));
  }
}

void composite_layer(const Layer& layer, Raster& dst) {
  for (std::size_t i = 0; i < layer.alpha.size(); ++i) {
    const std::uint32_t a = layer.alpha[i];
    if (a == 0) continue;
    for (int ch = 0; ch < 3; ++ch) {
      const std::int64_t n = static_cast<std::int64_t>(layer.color[i * 3 + ch]) +
                             static_cast<std::int64_t>(kAlphaOne - a) * dst.pixels[i * 3 + ch];
      dst.pixels[i * 3 + ch] = static_cast<std::uint8_t>(std::min<std::int64_t>(255, div_round_half_even(n, kAlphaOne)));
    }
  }
}

Raster composite_background(const Raster& foreground, std::span<const double> fg_mask, const Raster& background_photo) {
  Raster out = background_photo;
  composite_layer(Layer::from_foreground(foreground, fg_mask), out);
  return out;
}

Raster fit_to(const Raster& photo, int width, int height) {
  if (photo.width == width && photo.height == height) return photo;
  // Largest centered crop with the target aspect ratio.
  int crop_w = photo.width, crop_h = photo.height;
  if (static_cast<std::int64_t>(photo.width) * height > static_cast<std::int64_t>(photo.height) * width)
    crop_w = static_cast<int>(static_cast<std::int64_t>(photo.height) * width / height);
  else
    crop_h = static_cast<int>(static_cast<std::int64_t>(photo.width) * height / width);
  crop_w = std::max(crop_w, 1);
  crop_h = std::max(crop_h, 1);
  const int off_x = (photo.width - crop_w) / 2, off_y = (photo.height - crop_h) / 2;
  Raster out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = off_y + static_cast<int>((2 * static_cast<std::int64_t>(y) + 1) * crop_h / (2 * static_cast<std::int64_t>(height)));
    for (int x = 0; x < width; ++x) {
      const int sx = off_x + static_cast<int>((2 * static_cast<std::int64_t>(x) + 1) * crop_w / (2 * static_cast<std::int64_t>(width)));
      out.set(x, y, photo.at(sx, sy));
    }
  }
  return out;
}

}  // namespace aeroforge
