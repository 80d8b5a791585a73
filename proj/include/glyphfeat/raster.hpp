#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "glyphfeat/error.hpp"

namespace glyphfeat {

struct Point {
  int x = 0;
  int y = 0;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

struct PointD {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(const PointD&, const PointD&) = default;
};

/// Row-major 2-D array. The Tag parameter keeps grayscale and binary
/// rasters from being mixed up even though both store bytes.
template <typename T, typename Tag = void>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    require(width >= 0 && height >= 0, Errc::invalid_parameter, "raster dimensions must be non-negative");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Raster(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    require(width >= 0 && height >= 0, Errc::invalid_parameter, "raster dimensions must be non-negative");
    require(data_.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
            Errc::invalid_input, "raster data length must equal width * height");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  // Out-of-bounds reads return `outside`.
  T get_or(int x, int y, T outside) const noexcept { return contains(x, y) ? (*this)(x, y) : outside; }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }

  std::span<T> row(int y) noexcept { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
  std::span<const T> row(int y) const noexcept {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

struct GrayTag {};
struct BinaryTag {};

/// Intensities in [0,255], 0 = black.
using GrayImage = Raster<std::uint8_t, GrayTag>;
/// 1 = ink (foreground), 0 = background.
using BinaryImage = Raster<std::uint8_t, BinaryTag>;
using RealImage = Raster<double>;

/// cos and sin of an angle in degrees, exact at multiples of 90.
inline std::pair<double, double> cos_sin_deg(double deg) {
  const double q = deg / 90.0;
  if (q == std::round(q)) {
    switch (((static_cast<long>(std::round(q)) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double r = deg * std::numbers::pi / 180.0;
  return {std::cos(r), std::sin(r)};
}

inline bool is_ink(const BinaryImage& img, int x, int y) noexcept { return img.get_or(x, y, 0) != 0; }

inline std::size_t count_ink(const BinaryImage& img) {
  std::size_t n = 0;
  for (auto v : img.pixels()) n += v != 0;
  return n;
}

inline std::vector<Point> ink_points(const BinaryImage& img) {
  std::vector<Point> out;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img(x, y)) out.push_back({x, y});
  return out;
}

inline RealImage to_real(const BinaryImage& img) {
  RealImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 1.0 : 0.0;
  return out;
}

/// Exact integer first-order moments of a pixel set. Centering through these
/// keeps integer translations bit-exact.
struct Moments {
  std::int64_t count = 0;
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;

  void add(Point p) noexcept {
    ++count;
    sum_x += p.x;
    sum_y += p.y;
  }

  PointD centroid() const {
    require(count > 0, Errc::invalid_input, "centroid of an empty pixel set");
    return {static_cast<double>(sum_x) / static_cast<double>(count),
            static_cast<double>(sum_y) / static_cast<double>(count)};
  }

  // Nearest integer to the centroid, rounding halves up; pure integer math.
  Point rounded_centroid() const {
    require(count > 0, Errc::invalid_input, "centroid of an empty pixel set");
    auto round_div = [](std::int64_t num, std::int64_t den) {
      std::int64_t a = 2 * num + den;
      std::int64_t b = 2 * den;
      std::int64_t q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
      return q;
    };
    return {static_cast<int>(round_div(sum_x, count)), static_cast<int>(round_div(sum_y, count))};
  }
};

inline Moments ink_moments(const BinaryImage& img) {
  Moments m;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img(x, y)) m.add({x, y});
  return m;
}

/// Copies the ink of `src` into a new canvas, shifted by (dx, dy). Returns
/// false (and leaves the result partially filled) when some ink would fall
/// outside the canvas.
inline bool blit_shifted(const BinaryImage& src, int dx, int dy, BinaryImage& canvas) {
  bool clipped = false;
  for (int y = 0; y < src.height(); ++y)
    for (int x = 0; x < src.width(); ++x) {
      if (!src(x, y)) continue;
      int tx = x + dx, ty = y + dy;
      if (canvas.contains(tx, ty))
        canvas(tx, ty) = 1;
      else
        clipped = true;
    }
  return !clipped;
}

}  // namespace glyphfeat
