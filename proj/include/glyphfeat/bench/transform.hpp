#pragma once

// Geometric transforms for the invariance experiments. Applied in a fixed
// order: scale, rotate (display counterclockwise, degrees) about the ink
// gravity center, then translate by whole pixels.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat::bench {

struct TransformSpec {
  double rotation_deg = 0.0;
  int dx = 0;
  int dy = 0;
  double scale = 1.0;

  bool is_identity() const noexcept { return rotation_deg == 0.0 && dx == 0 && dy == 0 && scale == 1.0; }
  bool operator==(const TransformSpec&) const = default;
};

/// "identity", or '+'-joined parts "rot<deg>", "shift<dx>:<dy>", "scale<s>".
inline std::string describe(const TransformSpec& t) {
  if (t.is_identity()) return "identity";
  std::string out;
  char buf[64];
  auto add = [&](const char* s) {
    if (!out.empty()) out += '+';
    out += s;
  };
  if (t.scale != 1.0) {
    std::snprintf(buf, sizeof buf, "scale%g", t.scale);
    add(buf);
  }
  if (t.rotation_deg != 0.0) {
    std::snprintf(buf, sizeof buf, "rot%g", t.rotation_deg);
    add(buf);
  }
  if (t.dx != 0 || t.dy != 0) {
    std::snprintf(buf, sizeof buf, "shift%d:%d", t.dx, t.dy);
    add(buf);
  }
  return out;
}

inline TransformSpec parse_transform(const std::string& text) {
  TransformSpec t;
  if (text == "identity") return t;
  auto bad = [&]() { fail(Errc::parse_error, "bad transform '" + text + "'"); };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('+', pos), text.size());
    const std::string part = text.substr(pos, end - pos);
    char tail = 0;
    if (part.rfind("rot", 0) == 0) {
      if (std::sscanf(part.c_str() + 3, "%lf%c", &t.rotation_deg, &tail) != 1) bad();
    } else if (part.rfind("scale", 0) == 0) {
      if (std::sscanf(part.c_str() + 5, "%lf%c", &t.scale, &tail) != 1) bad();
    } else if (part.rfind("shift", 0) == 0) {
      if (std::sscanf(part.c_str() + 5, "%d:%d%c", &t.dx, &t.dy, &tail) != 2) bad();
    } else {
      bad();
    }
    pos = end + 1;
  }
  return t;
}

/// Same-size result, nearest-neighbor resampled. Throws TransformClipsInk if
/// any ink would land outside the canvas.
inline BinaryImage apply_transform(const BinaryImage& img, const TransformSpec& t) {
  require(t.scale >= 0.25 && t.scale <= 4.0, Errc::invalid_parameter, "transform scale must lie in [0.25, 4]");
  if (t.is_identity()) return img;
  const Moments m = ink_moments(img);
  if (m.count == 0) return img;

  if (t.rotation_deg == 0.0 && t.scale == 1.0) {
    BinaryImage out(img.width(), img.height(), 0);
    if (!blit_shifted(img, t.dx, t.dy, out)) fail(Errc::transform_clips_ink, "translation moves ink off the canvas");
    return out;
  }

  const PointD c = m.centroid();
  const auto [cs, sn] = cos_sin_deg(t.rotation_deg);
  // Forward map of a point: scale and rotate about c, then shift.
  auto forward = [&](double x, double y) {
    const double u = (x - c.x) * t.scale, v = (y - c.y) * t.scale;
    return PointD{c.x + u * cs + v * sn + t.dx, c.y - u * sn + v * cs + t.dy};
  };
  // Output region reached by the ink, from the forward image of its bbox.
  int bx0 = img.width(), by0 = img.height(), bx1 = -1, by1 = -1;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img(x, y)) {
        bx0 = std::min(bx0, x);
        bx1 = std::max(bx1, x);
        by0 = std::min(by0, y);
        by1 = std::max(by1, y);
      }
  double ox0 = 1e300, oy0 = 1e300, ox1 = -1e300, oy1 = -1e300;
  for (double x : {bx0 - 0.5, bx1 + 0.5})
    for (double y : {by0 - 0.5, by1 + 0.5}) {
      const PointD p = forward(x, y);
      ox0 = std::min(ox0, p.x);
      ox1 = std::max(ox1, p.x);
      oy0 = std::min(oy0, p.y);
      oy1 = std::max(oy1, p.y);
    }
  const int rx0 = static_cast<int>(std::floor(ox0)) - 1, rx1 = static_cast<int>(std::ceil(ox1)) + 1;
  const int ry0 = static_cast<int>(std::floor(oy0)) - 1, ry1 = static_cast<int>(std::ceil(oy1)) + 1;

  BinaryImage out(img.width(), img.height(), 0);
  for (int y = ry0; y <= ry1; ++y)
    for (int x = rx0; x <= rx1; ++x) {
      // Inverse map: unshift, rotate back, unscale.
      const double u = x - t.dx - c.x, v = y - t.dy - c.y;
      const double sx = c.x + (u * cs - v * sn) / t.scale;
      const double sy = c.y + (u * sn + v * cs) / t.scale;
      const int ix = static_cast<int>(std::floor(sx + 0.5)), iy = static_cast<int>(std::floor(sy + 0.5));
      if (!is_ink(img, ix, iy)) continue;
      if (!out.contains(x, y)) fail(Errc::transform_clips_ink, "transform " + describe(t) + " moves ink off the canvas");
      out(x, y) = 1;
    }
  return out;
}

}  // namespace glyphfeat::bench
