#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat {

/// Global threshold maximizing the between-class variance.
struct Otsu {};

/// Local threshold m * (1 + k * (s / R - 1)) over a square window clipped to
/// the image, where m and s are the window mean and standard deviation.
struct Sauvola {
  int window = 31;
  double k = 0.2;
  double dynamic_range = 128.0;
};

using BinarizeMethod = std::variant<Otsu, Sauvola>;

/// Largest gray level t of the dark class; ink is every pixel <= t. Ties in the
/// between-class variance resolve to the smallest t.
inline int otsu_threshold(const GrayImage& img) {
  require(!img.empty(), Errc::invalid_input, "otsu: empty image");
  std::array<std::int64_t, 256> hist{};
  for (auto v : img.pixels()) ++hist[v];
  const double total = static_cast<double>(img.size());
  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += static_cast<double>(i) * static_cast<double>(hist[i]);

  double weight_dark = 0.0, sum_dark = 0.0, best = -1.0;
  int best_t = 0;
  for (int t = 0; t < 256; ++t) {
    weight_dark += static_cast<double>(hist[t]);
    sum_dark += static_cast<double>(t) * static_cast<double>(hist[t]);
    double weight_light = total - weight_dark;
    if (weight_dark == 0.0 || weight_light == 0.0) {
      if (best < 0.0) {
        best = 0.0;
        best_t = t;
      }
      continue;
    }
    double mean_dark = sum_dark / weight_dark;
    double mean_light = (sum_all - sum_dark) / weight_light;
    double between = weight_dark * weight_light * (mean_dark - mean_light) * (mean_dark - mean_light);
    if (between > best) {
      best = between;
      best_t = t;
    }
  }
  return best_t;
}

/// Ink wherever the intensity is strictly below `threshold`.
inline BinaryImage apply_threshold(const GrayImage& img, double threshold) {
  BinaryImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<double>(src[i]) < threshold ? 1 : 0;
  return out;
}

namespace detail {

// Shared by the fast path and the test oracle so both round identically.
inline double sauvola_threshold(std::int64_t sum, std::int64_t sum_sq, std::int64_t n, const Sauvola& p) {
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  const double var = static_cast<double>(sum_sq) / static_cast<double>(n) - mean * mean;
  const double sd = std::sqrt(var > 0.0 ? var : 0.0);
  return mean * (1.0 + p.k * (sd / p.dynamic_range - 1.0));
}

inline BinaryImage sauvola(const GrayImage& img, const Sauvola& p) {
  const int w = img.width(), h = img.height();
  const int half = p.window / 2;
  // Integral images with a zero guard row/column.
  const std::size_t stride = static_cast<std::size_t>(w) + 1;
  std::vector<std::int64_t> s((static_cast<std::size_t>(h) + 1) * stride, 0);
  std::vector<std::int64_t> s2(s.size(), 0);
  for (int y = 0; y < h; ++y) {
    std::int64_t row = 0, row_sq = 0;
    for (int x = 0; x < w; ++x) {
      std::int64_t v = img(x, y);
      row += v;
      row_sq += v * v;
      auto i = (static_cast<std::size_t>(y) + 1) * stride + static_cast<std::size_t>(x) + 1;
      s[i] = s[i - stride] + row;
      s2[i] = s2[i - stride] + row_sq;
    }
  }
  auto rect = [&](const std::vector<std::int64_t>& t, int x0, int y0, int x1, int y1) {
    auto at = [&](int x, int y) { return t[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x)]; };
    return at(x1 + 1, y1 + 1) - at(x0, y1 + 1) - at(x1 + 1, y0) + at(x0, y0);
  };

  BinaryImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - half), y1 = std::min(h - 1, y + half);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - half), x1 = std::min(w - 1, x + half);
      const std::int64_t n = static_cast<std::int64_t>(x1 - x0 + 1) * (y1 - y0 + 1);
      const double t = sauvola_threshold(rect(s, x0, y0, x1, y1), rect(s2, x0, y0, x1, y1), n, p);
      out(x, y) = static_cast<double>(img(x, y)) < t ? 1 : 0;
    }
  }
  return out;
}

}  // namespace detail

inline BinaryImage binarize(const GrayImage& img, const BinarizeMethod& method = Sauvola{}) {
  require(!img.empty(), Errc::invalid_input, "binarize: empty image");
  if (const auto* sv = std::get_if<Sauvola>(&method)) {
    require(sv->window >= 3 && sv->window % 2 == 1, Errc::invalid_parameter,
            "sauvola window must be odd and >= 3");
    require(sv->dynamic_range > 0.0, Errc::invalid_parameter, "sauvola dynamic range must be positive");
    return detail::sauvola(img, *sv);
  }
  return apply_threshold(img, static_cast<double>(otsu_threshold(img)) + 1.0);
}

}  // namespace glyphfeat
