#pragma once

// Seeded synthetic data: isolated glyphs drawn from fixed stroke programs,
// and text pages with known line membership.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "glyphfeat/bench/dataset.hpp"
#include "glyphfeat/bench/random.hpp"
#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat::bench {

// ---------------------------------------------------------------------------
// Stroke programs. Coordinates are in glyph units, roughly [-1, 1]^2 with y
// pointing down; strokes are Catmull-Rom curves through their control points.

struct Stroke {
  std::vector<PointD> control;
  bool closed = false;
};

struct Dot {
  PointD center;
  double radius = 0.13;
};

struct GlyphProgram {
  std::string name;
  std::vector<Stroke> strokes;
  std::vector<Dot> dots;
};

namespace detail {

inline Stroke ellipse_stroke(PointD c, double rx, double ry, int points) {
  Stroke s;
  s.closed = true;
  for (int i = 0; i < points; ++i) {
    const double a = 2.0 * std::numbers::pi * i / points;
    s.control.push_back({c.x + rx * std::cos(a), c.y + ry * std::sin(a)});
  }
  return s;
}

}  // namespace detail

inline const std::vector<GlyphProgram>& glyph_catalog() {
  static const std::vector<GlyphProgram> catalog = [] {
    std::vector<GlyphProgram> c;
    c.push_back({"alif", {{{{0.08, -1.0}, {0.0, -0.35}, {-0.04, 0.35}, {0.02, 1.0}}}}, {}});
    c.push_back({"ba",
                 {{{{-1.0, -0.35}, {-0.85, 0.1}, {-0.3, 0.3}, {0.3, 0.3}, {0.85, 0.1}, {1.0, -0.35}}}},
                 {{{0.0, 0.75}}}});
    c.push_back({"jim",
                 {{{{0.7, -0.75}, {0.05, -0.8}, {-0.55, -0.45}, {-0.75, 0.1}, {-0.5, 0.6}, {0.1, 0.8}, {0.7, 0.7}}}},
                 {{{0.05, 0.0}}}});
    c.push_back({"dal", {{{{-0.45, -0.95}, {0.35, 0.05}, {0.3, 0.5}, {-0.65, 0.5}}}}, {}});
    c.push_back({"ra", {{{{0.55, -0.7}, {0.5, 0.05}, {0.15, 0.55}, {-0.6, 0.9}}}}, {}});
    c.push_back({"sin",
                 {{{{1.0, -0.35}, {0.85, 0.15}, {0.62, -0.3}, {0.42, 0.15}, {0.2, -0.3}, {0.0, 0.15}, {-0.45, 0.3},
                    {-0.9, 0.0}}}},
                 {}});
    {
      GlyphProgram mim{"mim", {detail::ellipse_stroke({0.0, -0.5}, 0.35, 0.3, 8)}, {}};
      mim.strokes.push_back({{{0.0, -0.2}, {0.05, 0.4}, {0.0, 1.0}}});
      c.push_back(std::move(mim));
    }
    c.push_back({"lam", {{{{0.4, -1.0}, {0.4, 0.35}, {0.1, 0.72}, {-0.4, 0.7}, {-0.65, 0.3}}}}, {}});
    {
      Stroke loop;
      loop.closed = true;
      loop.control = {{0.0, -0.8}, {0.6, -0.2}, {0.5, 0.5}, {-0.2, 0.65}, {-0.65, 0.1}, {-0.4, -0.5}};
      c.push_back({"ha", {loop}, {}});
    }
    c.push_back({"nun",
                 {{{{-0.8, -0.45}, {-0.7, 0.25}, {0.0, 0.7}, {0.7, 0.25}, {0.8, -0.45}}}},
                 {{{0.0, -0.3}}}});
    return c;
  }();
  return catalog;
}

namespace detail {

inline PointD catmull_rom(PointD p0, PointD p1, PointD p2, PointD p3, double t) {
  const double t2 = t * t, t3 = t2 * t;
  auto f = [&](double a, double b, double c, double d) {
    return 0.5 * (2.0 * b + (-a + c) * t + (2.0 * a - 5.0 * b + 4.0 * c - d) * t2 + (-a + 3.0 * b - 3.0 * c + d) * t3);
  };
  return {f(p0.x, p1.x, p2.x, p3.x), f(p0.y, p1.y, p2.y, p3.y)};
}

inline std::vector<PointD> sample_curve(const std::vector<PointD>& ctrl, bool closed, int per_span = 12) {
  const auto n = ctrl.size();
  if (n < 2) return ctrl;
  auto at = [&](long i) {
    if (closed) return ctrl[static_cast<std::size_t>((i % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n))];
    return ctrl[static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(n) - 1))];
  };
  const long spans = closed ? static_cast<long>(n) : static_cast<long>(n) - 1;
  std::vector<PointD> out;
  for (long s = 0; s < spans; ++s)
    for (int k = 0; k < per_span; ++k)
      out.push_back(catmull_rom(at(s - 1), at(s), at(s + 1), at(s + 2), static_cast<double>(k) / per_span));
  out.push_back(closed ? ctrl[0] : ctrl[n - 1]);
  return out;
}

inline double segment_distance(PointD p, PointD a, PointD b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - a.x - t * vx, p.y - a.y - t * vy);
}

inline void draw_thick_polyline(BinaryImage& img, const std::vector<PointD>& pts, double half_width) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const PointD a = pts[i], b = pts[i + 1];
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - half_width)));
    const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + half_width)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - half_width)));
    const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + half_width)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        if (segment_distance({static_cast<double>(x), static_cast<double>(y)}, a, b) <= half_width) img(x, y) = 1;
  }
}

inline void draw_disk(BinaryImage& img, PointD c, double r) {
  for (int y = std::max(0, static_cast<int>(std::floor(c.y - r))); y <= std::min(img.height() - 1, static_cast<int>(std::ceil(c.y + r))); ++y)
    for (int x = std::max(0, static_cast<int>(std::floor(c.x - r))); x <= std::min(img.width() - 1, static_cast<int>(std::ceil(c.x + r))); ++x)
      if (std::hypot(x - c.x, y - c.y) <= r) img(x, y) = 1;
}

// splitmix64 finalizer; gives every (seed, class, sample) its own stream.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

struct GlyphJitter {
  double point_sigma = 1.5;  // control-point noise, pixels
  int stroke_width = 3;
  int width_jitter = 1;      // width drawn uniformly from stroke_width +- this
};

/// Renders one sample of `program` on a canvas x canvas raster.
inline BinaryImage render_glyph(const GlyphProgram& program, int canvas, const GlyphJitter& jitter, Random& rng) {
  require(canvas >= 32, Errc::invalid_parameter, "glyph canvas must be at least 32 pixels");
  require(jitter.stroke_width - jitter.width_jitter >= 1 && jitter.point_sigma >= 0.0, Errc::invalid_parameter,
          "invalid glyph jitter");
  const double center = (canvas - 1) / 2.0;
  const double unit = 0.2 * canvas;
  const int width = jitter.stroke_width + (jitter.width_jitter > 0 ? rng.uniform_int(-jitter.width_jitter, jitter.width_jitter) : 0);
  auto place = [&](PointD u) {
    PointD p{center + unit * u.x, center + unit * u.y};
    if (jitter.point_sigma > 0.0) {
      p.x += rng.normal(0.0, jitter.point_sigma);
      p.y += rng.normal(0.0, jitter.point_sigma);
    }
    return p;
  };
  BinaryImage img(canvas, canvas, 0);
  for (const auto& s : program.strokes) {
    std::vector<PointD> ctrl;
    for (auto u : s.control) ctrl.push_back(place(u));
    detail::draw_thick_polyline(img, detail::sample_curve(ctrl, s.closed), width / 2.0);
  }
  for (const auto& d : program.dots) detail::draw_disk(img, place(d.center), std::max(1.0, unit * d.radius));
  return img;
}

struct SynthConfig {
  std::uint64_t seed = 1;
  int classes = 10;
  int train_per_class = 70;  // 10 x 70 = 700 training glyphs
  int fresh_per_class = 98;  // 10 x 98 = 980 unseen test glyphs
  int canvas = 128;
  GlyphJitter jitter{};
  bool test_includes_train = true;  // test split = train copies + fresh samples
};

/// Class-major order: all train samples, then (optionally) test copies of
/// them, then the fresh test samples. Each sample has its own random stream,
/// so changing one count never changes the other samples.
inline Dataset synth_glyphs(const SynthConfig& cfg) {
  const auto& catalog = glyph_catalog();
  require(cfg.classes >= 2 && cfg.classes <= static_cast<int>(catalog.size()), Errc::invalid_parameter,
          "synth: class count must be between 2 and the catalog size");
  require(cfg.train_per_class >= 1 && cfg.fresh_per_class >= 0, Errc::invalid_parameter,
          "synth: need at least one training sample per class");
  auto sample = [&](int cls, int index, Split split, const std::string& tag) {
    Random rng(detail::mix(cfg.seed ^ detail::mix((static_cast<std::uint64_t>(cls) << 32) | static_cast<std::uint32_t>(index))));
    const auto& prog = catalog[static_cast<std::size_t>(cls)];
    Sample s;
    s.image = render_glyph(prog, cfg.canvas, cfg.jitter, rng);
    s.label = prog.name;
    s.writer_id = "w" + std::to_string(index);
    s.split = split;
    s.source_id = prog.name + "_" + tag + std::to_string(index);
    return s;
  };
  Dataset out;
  for (int c = 0; c < cfg.classes; ++c)
    for (int i = 0; i < cfg.train_per_class; ++i) out.push_back(sample(c, i, Split::train, "tr"));
  if (cfg.test_includes_train) {
    const std::size_t n_train = out.size();
    for (std::size_t i = 0; i < n_train; ++i) {
      Sample s = out[i];
      s.split = Split::test;
      s.source_id = s.label + "_te" + s.writer_id.substr(1);
      out.push_back(std::move(s));
    }
  }
  for (int c = 0; c < cfg.classes; ++c)
    for (int i = 0; i < cfg.fresh_per_class; ++i)
      out.push_back(sample(c, cfg.train_per_class + i, Split::test, "te"));
  return out;
}

// ---------------------------------------------------------------------------
// Text pages: rows of word blobs, each carrying a small dot above it, rotated
// about the page center so lines rise to the right by skew_deg.

struct PageSpec {
  int lines = 3;
  int words_per_line = 10;
  int word_width = 20;
  int word_height = 20;
  int gap = 16;
  int pitch = 60;
  int margin = 40;
  double skew_deg = 0.0;
  bool dots = true;
  double dot_radius = 2.0;
};

struct SyntheticPage {
  BinaryImage image;
  Raster<int> truth;  // 1-based line index of every ink pixel, 0 elsewhere
};

inline SyntheticPage synth_page(const PageSpec& spec) {
  require(spec.lines >= 1 && spec.words_per_line >= 1 && spec.word_width >= 1 && spec.word_height >= 1 &&
              spec.pitch > spec.word_height && spec.margin >= 0,
          Errc::invalid_parameter, "synth_page: invalid layout");
  const int w = 2 * spec.margin + spec.words_per_line * spec.word_width + (spec.words_per_line - 1) * spec.gap;
  const int h = 2 * spec.margin + spec.lines * spec.pitch;
  SyntheticPage page{BinaryImage(w, h, 0), Raster<int>(w, h, 0)};
  const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  const double a = spec.skew_deg * std::numbers::pi / 180.0, ca = std::cos(a), sa = std::sin(a);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      // Undo a display-counterclockwise rotation by `a`.
      const double ux = cx + (x - cx) * ca - (y - cy) * sa;
      const double uy = cy + (x - cx) * sa + (y - cy) * ca;
      for (int l = 0; l < spec.lines; ++l) {
        const double top = spec.margin + l * spec.pitch + (spec.pitch - spec.word_height) / 2.0;
        bool hit = false;
        for (int k = 0; k < spec.words_per_line && !hit; ++k) {
          const double left = spec.margin + k * (spec.word_width + spec.gap);
          hit = ux >= left - 0.5 && ux < left + spec.word_width - 0.5 && uy >= top - 0.5 &&
                uy < top + spec.word_height - 0.5;
          if (!hit && spec.dots) {
            const double dx = ux - (left + (spec.word_width - 1) / 2.0), dy = uy - (top - 8.0);
            hit = dx * dx + dy * dy <= spec.dot_radius * spec.dot_radius;
          }
        }
        if (hit) {
          page.image(x, y) = 1;
          page.truth(x, y) = l + 1;
          break;
        }
      }
    }
  return page;
}

}  // namespace glyphfeat::bench
