#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "glyphfeat/raster.hpp"

namespace testutil {

using glyphfeat::BinaryImage;
using glyphfeat::Point;

inline BinaryImage from_rows(std::initializer_list<const char*> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(std::string(*rows.begin()).size());
  BinaryImage img(w, h, 0);
  int y = 0;
  for (const char* r : rows) {
    for (int x = 0; x < w; ++x) img(x, y) = r[x] == '#' ? 1 : 0;
    ++y;
  }
  return img;
}

inline BinaryImage random_binary(int w, int h, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BinaryImage img(w, h, 0);
  for (auto& v : img.pixels()) v = u(rng) < density ? 1 : 0;
  return img;
}

inline BinaryImage filled_rect(int w, int h, int x0, int y0, int x1, int y1) {
  BinaryImage img(w, h, 0);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) img(x, y) = 1;
  return img;
}

inline BinaryImage disk(int size, double cx, double cy, double r) {
  BinaryImage img(size, size, 0);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      if (std::hypot(x - cx, y - cy) <= r) img(x, y) = 1;
  return img;
}

/// Copy of `img` rotated by exactly 90 degrees (display counterclockwise).
inline BinaryImage rotate90(const BinaryImage& img) {
  BinaryImage out(img.height(), img.width(), 0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out(y, img.width() - 1 - x) = img(x, y);
  return out;
}

inline BinaryImage shifted(const BinaryImage& img, int dx, int dy, int w, int h) {
  BinaryImage out(w, h, 0);
  glyphfeat::blit_shifted(img, dx, dy, out);
  return out;
}

inline double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double norm(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

}  // namespace testutil
