#pragma once

// Outer-boundary tracing and Freeman chain codes.
//
// Chain codes use mathematical orientation: code 0 = +x, and each increment
// turns 45 degrees counterclockwise with the y axis pointing up. Raster rows
// grow downward, so code 2 moves to row y-1 and code 6 to row y+1. The traced
// outer contour has positive shoelace area in raster coordinates, i.e. it
// runs clockwise as the image is displayed and counterclockwise once y is
// flipped back to point up.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "glyphfeat/components.hpp"
#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat {

struct Contour {
  std::vector<Point> points;
  bool closed = true;
};

struct ChainCode {
  Point start;
  std::vector<std::uint8_t> codes;
};

/// Piecewise-linear periodic parameterization of a chain code by arc length.
/// `points` and `t` carry K+1 entries; the last point repeats the first.
struct ContourParam {
  double perimeter = 0.0;
  std::vector<double> t;
  std::vector<PointD> points;

  PointD at(double s) const;
};

inline constexpr std::array<Point, 8> kChainSteps = {
    Point{1, 0}, Point{1, -1}, Point{0, -1}, Point{-1, -1}, Point{-1, 0}, Point{-1, 1}, Point{0, 1}, Point{1, 1}};

inline double chain_step_length(std::uint8_t code) { return (code & 1) ? std::numbers::sqrt2 : 1.0; }

inline int chain_code_of(Point from, Point to) {
  const int dx = to.x - from.x, dy = to.y - from.y;
  for (int c = 0; c < 8; ++c)
    if (kChainSteps[c].x == dx && kChainSteps[c].y == dy) return c;
  return -1;
}

namespace detail {

// Moore neighborhood in display-clockwise order, starting west.
inline constexpr std::array<Point, 8> kMooreRing = {
    Point{-1, 0}, Point{-1, -1}, Point{0, -1}, Point{1, -1}, Point{1, 0}, Point{1, 1}, Point{0, 1}, Point{-1, 1}};

inline int ring_index(Point d) {
  for (int i = 0; i < 8; ++i)
    if (kMooreRing[i] == d) return i;
  return -1;
}

// Moore-neighbor tracing with Jacob's stopping criterion over a pixel mask:
// the walk ends when it leaves `start` toward the same pixel as on the first
// step. `start` must be the first mask pixel in raster order, so its west
// neighbor is background.
inline Contour moore_trace(const BinaryImage& mask, Point start, std::size_t area) {
  Contour out;
  out.points.push_back(start);
  Point p = start;
  int back_dir = 0;
  const std::size_t max_steps = 8 * area + 16;
  for (std::size_t step = 0; step < max_steps; ++step) {
    int found = -1;
    for (int i = 1; i <= 8; ++i) {
      int d = (back_dir + i) % 8;
      if (is_ink(mask, p.x + kMooreRing[d].x, p.y + kMooreRing[d].y)) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    const Point q{p.x + kMooreRing[found].x, p.y + kMooreRing[found].y};
    if (p == start && out.points.size() > 1 && q == out.points[1]) {
      out.points.pop_back();
      break;
    }
    const Point prev = kMooreRing[(found + 7) % 8];
    back_dir = ring_index({p.x + prev.x - q.x, p.y + prev.y - q.y});
    p = q;
    out.points.push_back(p);
  }
  return out;
}

}  // namespace detail

/// Outer boundary of `comp`, starting at its first pixel in raster order.
/// Thin (one-pixel-wide) parts are walked out and back, so such pixels
/// appear more than once.
inline Contour trace_contour(const BinaryImage& img, const ConnectedComponent& comp) {
  require(comp.area >= 1 && is_ink(img, comp.seed.x, comp.seed.y), Errc::invalid_input,
          "trace_contour: empty component");
  const auto pixels = component_pixels(img, comp);
  BinaryImage mask(img.width(), img.height(), 0);
  for (Point p : pixels) mask(p.x, p.y) = 1;
  return detail::moore_trace(mask, comp.seed, pixels.size());
}

inline ChainCode to_chain_code(const Contour& c) {
  ChainCode out;
  if (c.points.empty()) return out;
  out.start = c.points.front();
  if (c.points.size() < 2) return out;
  const std::size_t n = c.points.size();
  const std::size_t links = c.closed ? n : n - 1;
  out.codes.reserve(links);
  for (std::size_t i = 0; i < links; ++i) {
    int code = chain_code_of(c.points[i], c.points[(i + 1) % n]);
    if (code < 0) fail(Errc::invalid_contour, "consecutive contour points are not 8-neighbors");
    out.codes.push_back(static_cast<std::uint8_t>(code));
  }
  return out;
}

/// Walks the codes from `start`; for a closed chain the walk returns to start,
/// which is not repeated in the output.
inline std::vector<Point> chain_points(const ChainCode& cc) {
  std::vector<Point> pts{cc.start};
  if (cc.codes.empty()) return pts;
  Point p = cc.start;
  for (std::size_t i = 0; i + 1 < cc.codes.size(); ++i) {
    p.x += kChainSteps[cc.codes[i]].x;
    p.y += kChainSteps[cc.codes[i]].y;
    pts.push_back(p);
  }
  return pts;
}

inline ContourParam parameterize(const ChainCode& cc) {
  require(!cc.codes.empty(), Errc::invalid_input, "parameterize: empty chain code");
  for (auto c : cc.codes) require(c < 8, Errc::invalid_contour, "chain code out of range");
  ContourParam out;
  out.t.reserve(cc.codes.size() + 1);
  out.points.reserve(cc.codes.size() + 1);
  PointD p{static_cast<double>(cc.start.x), static_cast<double>(cc.start.y)};
  double t = 0.0;
  out.t.push_back(t);
  out.points.push_back(p);
  for (auto c : cc.codes) {
    t += chain_step_length(c);
    p.x += kChainSteps[c].x;
    p.y += kChainSteps[c].y;
    out.t.push_back(t);
    out.points.push_back(p);
  }
  out.perimeter = t;
  return out;
}

inline PointD ContourParam::at(double s) const {
  s = std::fmod(s, perimeter);
  if (s < 0) s += perimeter;
  std::size_t k = 1;
  while (k + 1 < t.size() && t[k] < s) ++k;
  const double f = (s - t[k - 1]) / (t[k] - t[k - 1]);
  return {points[k - 1].x + f * (points[k].x - points[k - 1].x),
          points[k - 1].y + f * (points[k].y - points[k - 1].y)};
}

}  // namespace glyphfeat
