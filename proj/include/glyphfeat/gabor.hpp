#pragma once

// Gabor filter bank
//   G(x, y, theta, f) = exp(-1/2 ((x'/s_x)^2 + (y'/s_y)^2)) * cos(2 pi f x')
//   x' = x cos(theta) + y sin(theta),  y' = y cos(theta) - x sin(theta)
// with orientations theta_k = 2 pi / m * (k - 1), k = 1..m, and f = 1 / lambda.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat {

struct GaborParams {
  int orientations = 4;     // m
  double wavelength = 4.0;  // lambda, pixels per cycle
  double sigma_x = 2.0;
  double sigma_y = 1.0;
  int kernel_radius = 6;

  /// m = 4, lambda = 1, sigma_x = 2, sigma_y = 1. With lambda = 1 the carrier
  /// is sampled once per cycle, so along theta = 0 it is identically 1 on the
  /// pixel grid; the default lambda = 4 avoids that aliasing.
  static GaborParams unit_wavelength() {
    GaborParams p;
    p.wavelength = 1.0;
    return p;
  }
};

inline double gabor_orientation(int k, int m) { return 2.0 * std::numbers::pi / m * k; }

class GaborKernel {
 public:
  GaborKernel(double theta, const GaborParams& p) : theta_(theta), radius_(p.kernel_radius) {
    require(p.kernel_radius >= 1, Errc::invalid_parameter, "gabor kernel radius must be >= 1");
    require(p.wavelength > 0.0 && p.sigma_x > 0.0 && p.sigma_y > 0.0, Errc::invalid_parameter,
            "gabor wavelength and sigmas must be positive");
    const int side = 2 * radius_ + 1;
    taps_.resize(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
    const double c = std::cos(theta), s = std::sin(theta), f = 1.0 / p.wavelength;
    for (int y = -radius_; y <= radius_; ++y)
      for (int x = -radius_; x <= radius_; ++x) {
        const double xr = x * c + y * s;
        const double yr = y * c - x * s;
        const double ex = xr / p.sigma_x, ey = yr / p.sigma_y;
        at_mut(x, y) = std::exp(-0.5 * (ex * ex + ey * ey)) * std::cos(2.0 * std::numbers::pi * f * xr);
      }
  }

  double theta() const noexcept { return theta_; }
  int radius() const noexcept { return radius_; }
  double at(int x, int y) const noexcept { return taps_[index(x, y)]; }
  const std::vector<double>& taps() const noexcept { return taps_; }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y + radius_) * static_cast<std::size_t>(2 * radius_ + 1) +
           static_cast<std::size_t>(x + radius_);
  }
  double& at_mut(int x, int y) noexcept { return taps_[index(x, y)]; }

  double theta_;
  int radius_;
  std::vector<double> taps_;
};

inline GaborKernel gabor_kernel(double theta, const GaborParams& p) { return GaborKernel(theta, p); }

/// Same-size correlation with zero padding:
///   out(x, y) = sum_{u,v} img(x + u, y + v) * k(u, v).
inline RealImage convolve(const RealImage& img, const GaborKernel& k) {
  const int w = img.width(), h = img.height(), r = k.radius();
  RealImage out(w, h, 0.0);
  for (int v = -r; v <= r; ++v) {
    const int y0 = std::max(0, -v), y1 = std::min(h, h - v);
    for (int u = -r; u <= r; ++u) {
      const double tap = k.at(u, v);
      const int x0 = std::max(0, -u), x1 = std::min(w, w - u);
      for (int y = y0; y < y1; ++y) {
        const auto src = img.row(y + v);
        auto dst = out.row(y);
        for (int x = x0; x < x1; ++x) dst[static_cast<std::size_t>(x)] += tap * src[static_cast<std::size_t>(x + u)];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Glyph feature: the glyph is moved so its gravity center sits at the center
// of an N x N frame, filtered at each orientation, and the mean |response| is
// taken over a g x g grid of cells. Layout is orientation-major.
//
// With alignment on, the orientation blocks are shifted cyclically so the
// highest-energy orientation comes first. A shift of s blocks corresponds to
// rotating the glyph by s * 360/m degrees; when that angle is a multiple of 90
// the cell grid is rotated back by it as well. The cosine carrier cannot
// tell theta from theta + pi, so equal-energy candidates are separated by
// which half of the grid (top or bottom) carries more response.

struct GaborFeatureParams {
  GaborParams filter{};
  int frame = 128;
  int grid = 4;
  bool align = true;
};

namespace detail {

inline std::vector<double> align_gabor_blocks(const std::vector<double>& raw, int m, int g) {
  const auto cells = static_cast<std::size_t>(g * g);
  std::vector<double> energy(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k)
    for (std::size_t c = 0; c < cells; ++c) energy[static_cast<std::size_t>(k)] += raw[static_cast<std::size_t>(k) * cells + c];
  const double top = *std::max_element(energy.begin(), energy.end());

  auto build = [&](int s) {
    std::vector<double> out(raw.size());
    const double angle = 360.0 / m * s;
    const double quarters = angle / 90.0;
    const bool grid_turn = std::abs(quarters - std::round(quarters)) < 1e-9;
    const int q = grid_turn ? static_cast<int>(std::lround(quarters)) % 4 : 0;
    for (int j = 0; j < m; ++j) {
      const auto src_block = static_cast<std::size_t>((j + s) % m) * cells;
      for (int cy = 0; cy < g; ++cy)
        for (int cx = 0; cx < g; ++cx) {
          // Doubled, centered cell coordinates, rotated by -q quarter turns.
          int u = 2 * cx - (g - 1), v = 2 * cy - (g - 1);
          for (int t = 0; t < q; ++t) {
            const int nu = -v, nv = u;
            u = nu;
            v = nv;
          }
          const auto sx = static_cast<std::size_t>((u + g - 1) / 2), sy = static_cast<std::size_t>((v + g - 1) / 2);
          out[static_cast<std::size_t>(j) * cells + static_cast<std::size_t>(cy * g + cx)] =
              raw[src_block + sy * static_cast<std::size_t>(g) + sx];
        }
    }
    return out;
  };
  auto polarity = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (int cy = 0; cy < g; ++cy) {
      const double sign = cy < g / 2 ? 1.0 : (cy >= (g + 1) / 2 ? -1.0 : 0.0);
      for (int cx = 0; cx < g; ++cx) s += sign * v[static_cast<std::size_t>(cy * g + cx)];
    }
    return s;
  };

  std::optional<std::vector<double>> best;
  double best_polarity = 0.0;
  for (int s = 0; s < m; ++s) {
    if (energy[static_cast<std::size_t>(s)] < top * (1.0 - 1e-9)) continue;
    auto cand = build(s);
    const double pol = polarity(cand);
    if (!best || pol > best_polarity + 1e-12 * (std::abs(best_polarity) + 1.0)) {
      best = std::move(cand);
      best_polarity = pol;
    }
  }
  return *best;
}

}  // namespace detail

inline std::vector<double> gabor_feature(const BinaryImage& glyph, const GaborFeatureParams& p = {}) {
  const int m = p.filter.orientations, g = p.grid, n = p.frame;
  require(m >= 1 && g >= 1 && n >= g, Errc::invalid_parameter, "gabor feature: invalid m / grid / frame");
  const Moments mom = ink_moments(glyph);
  require(mom.count > 0, Errc::invalid_input, "gabor feature: glyph has no ink");
  const Point c = mom.rounded_centroid();
  BinaryImage framed(n, n, 0);
  if (!blit_shifted(glyph, n / 2 - c.x, n / 2 - c.y, framed))
    fail(Errc::glyph_too_large, "gabor feature: glyph exceeds the frame");
  const RealImage input = to_real(framed);

  const auto cells = static_cast<std::size_t>(g * g);
  std::vector<double> raw(static_cast<std::size_t>(m) * cells, 0.0);
  for (int k = 0; k < m; ++k) {
    const RealImage resp = convolve(input, gabor_kernel(gabor_orientation(k, m), p.filter));
    for (int cy = 0; cy < g; ++cy)
      for (int cx = 0; cx < g; ++cx) {
        const int x0 = cx * n / g, x1 = (cx + 1) * n / g, y0 = cy * n / g, y1 = (cy + 1) * n / g;
        double s = 0.0;
        for (int y = y0; y < y1; ++y)
          for (int x = x0; x < x1; ++x) s += std::abs(resp(x, y));
        raw[static_cast<std::size_t>(k) * cells + static_cast<std::size_t>(cy * g + cx)] =
            s / static_cast<double>((x1 - x0) * (y1 - y0));
      }
  }
  if (!p.align || m == 1) return raw;
  return detail::align_gabor_blocks(raw, m, g);
}

}  // namespace glyphfeat
