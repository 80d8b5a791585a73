#pragma once

// Separable 2-D discrete wavelet transform with periodic extension, and the
// 80-value block feature built on it.
//
// One level filters rows then columns with the orthonormal scaling filter h
// and its quadrature mirror g[j] = (-1)^j h[L-1-j]:
//   lo[k] = sum_j h[j] x[(2k + j) mod n],   hi[k] = sum_j g[j] x[(2k + j) mod n]
// LH is low-pass along x and high-pass along y (horizontal detail), HL the
// reverse (vertical detail), HH high-pass in both (diagonal detail).
// An odd-length axis is made even by repeating its last sample.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat {

enum class WaveletFamily { haar, db2, db3, db4, sym4, sym5 };

struct WaveletSpec {
  WaveletFamily family = WaveletFamily::db3;
  int levels = 3;
};

inline std::span<const double> scaling_filter(WaveletFamily f) {
  static constexpr double haar[] = {0.70710678118654757274, 0.70710678118654757274};
  static constexpr double db2[] = {0.48296291314453415611, 0.83651630373780794248, 0.22414386804201338887,
                                   -0.12940952255126036974};
  static constexpr double db3[] = {0.33267055295008263194,  0.80689150931109254739,   0.45987750211849154347,
                                   -0.13501102001025458432, -0.085441273882026658182, 0.035226291885709533347};
  static constexpr double db4[] = {0.23037781330889650633,   0.71484657055291567218,  0.63088076792985892105,
                                   -0.027983769416859854279, -0.18703481171909308589, 0.030841381835560763985,
                                   0.032883011666885196556,  -0.010597401785069031702};
  static constexpr double sym4[] = {0.032223100604042702322, -0.012603967262037833047, -0.099219543576847216149,
                                    0.29785779560527736454,  0.80373875180591614065,   0.49761866763201545449,
                                    -0.029635527645998509944, -0.075765714789273325147};
  static constexpr double sym5[] = {0.01953888273528672781,  -0.021101834024758854558, -0.17532808990845047403,
                                    0.016602105764522319398, 0.63397896345821191932,   0.72340769040242058896,
                                    0.19939753397739359841,  -0.039134249302383093683, 0.02951949092577464337,
                                    0.027333068345077982109};
  switch (f) {
    case WaveletFamily::haar: return haar;
    case WaveletFamily::db2: return db2;
    case WaveletFamily::db3: return db3;
    case WaveletFamily::db4: return db4;
    case WaveletFamily::sym4: return sym4;
    case WaveletFamily::sym5: return sym5;
  }
  return haar;
}

inline std::vector<double> wavelet_filter(WaveletFamily f) {
  auto h = scaling_filter(f);
  std::vector<double> g(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) g[j] = ((j % 2) ? -1.0 : 1.0) * h[h.size() - 1 - j];
  return g;
}

inline std::string_view family_name(WaveletFamily f) {
  switch (f) {
    case WaveletFamily::haar: return "haar";
    case WaveletFamily::db2: return "db2";
    case WaveletFamily::db3: return "db3";
    case WaveletFamily::db4: return "db4";
    case WaveletFamily::sym4: return "sym4";
    case WaveletFamily::sym5: return "sym5";
  }
  return "haar";
}

inline WaveletFamily parse_family(std::string_view name) {
  for (auto f : {WaveletFamily::haar, WaveletFamily::db2, WaveletFamily::db3, WaveletFamily::db4,
                 WaveletFamily::sym4, WaveletFamily::sym5})
    if (family_name(f) == name) return f;
  fail(Errc::invalid_parameter, "unknown wavelet family '" + std::string(name) + "'");
}

struct DetailBands {
  RealImage lh, hl, hh;
};

/// details[l] holds level l+1 (finest first). input_sizes[l] is the size of
/// the array that level l+1 decomposed.
struct SubbandSet {
  std::vector<DetailBands> details;
  RealImage ll;
  std::vector<Point> input_sizes;
};

namespace detail {

inline void analyze_1d(std::span<const double> x, std::span<const double> h, std::span<const double> g,
                       std::span<double> lo, std::span<double> hi) {
  const std::size_t n = x.size();  // even
  const std::size_t half = n / 2, len = h.size();
  for (std::size_t k = 0; k < half; ++k) {
    double sl = 0.0, sh = 0.0;
    std::size_t idx = 2 * k;
    for (std::size_t j = 0; j < len; ++j) {
      const double v = x[idx];
      sl += h[j] * v;
      sh += g[j] * v;
      if (++idx == n) idx = 0;
    }
    lo[k] = sl;
    hi[k] = sh;
  }
}

inline void synthesize_1d(std::span<const double> lo, std::span<const double> hi, std::span<const double> h,
                          std::span<const double> g, std::span<double> x) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2, len = h.size();
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    std::size_t idx = 2 * k;
    for (std::size_t j = 0; j < len; ++j) {
      x[idx] += h[j] * lo[k] + g[j] * hi[k];
      if (++idx == n) idx = 0;
    }
  }
}

inline int even_up(int n) { return n + (n & 1); }

// One analysis level on `in`; returns {LL, LH, HL, HH}.
inline std::array<RealImage, 4> analyze_level(const RealImage& in, std::span<const double> h,
                                              std::span<const double> g) {
  const int w = in.width(), hgt = in.height();
  const int we = even_up(w), he = even_up(hgt);
  const int hw = we / 2, hh = he / 2;

  // Rows -> low and high along x, each hw x he.
  RealImage low_x(hw, he), high_x(hw, he);
  std::vector<double> row(static_cast<std::size_t>(we)), lo(static_cast<std::size_t>(hw)),
      hi(static_cast<std::size_t>(hw));
  for (int y = 0; y < he; ++y) {
    const int sy = std::min(y, hgt - 1);
    for (int x = 0; x < we; ++x) row[static_cast<std::size_t>(x)] = in(std::min(x, w - 1), sy);
    analyze_1d(row, h, g, lo, hi);
    for (int x = 0; x < hw; ++x) {
      low_x(x, y) = lo[static_cast<std::size_t>(x)];
      high_x(x, y) = hi[static_cast<std::size_t>(x)];
    }
  }
  std::array<RealImage, 4> out{RealImage(hw, hh), RealImage(hw, hh), RealImage(hw, hh), RealImage(hw, hh)};
  std::vector<double> col(static_cast<std::size_t>(he)), clo(static_cast<std::size_t>(hh)),
      chi(static_cast<std::size_t>(hh));
  for (int pass = 0; pass < 2; ++pass) {
    const RealImage& src = pass == 0 ? low_x : high_x;
    RealImage& dst_lo = pass == 0 ? out[0] : out[2];  // LL or HL
    RealImage& dst_hi = pass == 0 ? out[1] : out[3];  // LH or HH
    for (int x = 0; x < hw; ++x) {
      for (int y = 0; y < he; ++y) col[static_cast<std::size_t>(y)] = src(x, y);
      analyze_1d(col, h, g, clo, chi);
      for (int y = 0; y < hh; ++y) {
        dst_lo(x, y) = clo[static_cast<std::size_t>(y)];
        dst_hi(x, y) = chi[static_cast<std::size_t>(y)];
      }
    }
  }
  return out;
}

inline RealImage synthesize_level(const RealImage& ll, const DetailBands& d, Point size, std::span<const double> h,
                                  std::span<const double> g) {
  const int hw = ll.width(), hh = ll.height();
  const int we = 2 * hw, he = 2 * hh;
  RealImage low_x(hw, he), high_x(hw, he);
  std::vector<double> col(static_cast<std::size_t>(he)), clo(static_cast<std::size_t>(hh)),
      chi(static_cast<std::size_t>(hh));
  for (int pass = 0; pass < 2; ++pass) {
    const RealImage& src_lo = pass == 0 ? ll : d.hl;
    const RealImage& src_hi = pass == 0 ? d.lh : d.hh;
    RealImage& dst = pass == 0 ? low_x : high_x;
    for (int x = 0; x < hw; ++x) {
      for (int y = 0; y < hh; ++y) {
        clo[static_cast<std::size_t>(y)] = src_lo(x, y);
        chi[static_cast<std::size_t>(y)] = src_hi(x, y);
      }
      synthesize_1d(clo, chi, h, g, col);
      for (int y = 0; y < he; ++y) dst(x, y) = col[static_cast<std::size_t>(y)];
    }
  }
  RealImage out(size.x, size.y);
  std::vector<double> row(static_cast<std::size_t>(we)), lo(static_cast<std::size_t>(hw)),
      hi(static_cast<std::size_t>(hw));
  for (int y = 0; y < size.y; ++y) {
    for (int x = 0; x < hw; ++x) {
      lo[static_cast<std::size_t>(x)] = low_x(x, y);
      hi[static_cast<std::size_t>(x)] = high_x(x, y);
    }
    synthesize_1d(lo, hi, h, g, row);
    for (int x = 0; x < size.x; ++x) out(x, y) = row[static_cast<std::size_t>(x)];
  }
  return out;
}

}  // namespace detail

inline SubbandSet dwt2(const RealImage& img, const WaveletSpec& spec) {
  require(!img.empty(), Errc::invalid_input, "dwt2: empty image");
  require(spec.levels >= 1, Errc::invalid_parameter, "dwt2: levels must be >= 1");
  const auto h = scaling_filter(spec.family);
  const auto g = wavelet_filter(spec.family);
  const int len = static_cast<int>(h.size());
  SubbandSet out;
  RealImage cur = img;
  for (int level = 0; level < spec.levels; ++level) {
    if (cur.width() < len || cur.height() < len)
      fail(Errc::decomposition_too_deep, "dwt2: image smaller than the filter at level " + std::to_string(level + 1));
    out.input_sizes.push_back({cur.width(), cur.height()});
    auto bands = detail::analyze_level(cur, h, g);
    out.details.push_back({std::move(bands[1]), std::move(bands[2]), std::move(bands[3])});
    cur = std::move(bands[0]);
  }
  out.ll = std::move(cur);
  return out;
}

inline RealImage idwt2(const SubbandSet& s, const WaveletSpec& spec) {
  const auto levels = static_cast<std::size_t>(spec.levels);
  if (s.details.size() != levels || s.input_sizes.size() != levels)
    fail(Errc::invalid_subbands, "idwt2: level count does not match the wavelet spec");
  const auto h = scaling_filter(spec.family);
  const auto g = wavelet_filter(spec.family);
  RealImage cur = s.ll;
  for (std::size_t i = levels; i-- > 0;) {
    const Point size = s.input_sizes[i];
    const int hw = detail::even_up(size.x) / 2, hh = detail::even_up(size.y) / 2;
    const auto& d = s.details[i];
    for (const RealImage* band : {static_cast<const RealImage*>(&cur), &d.lh, &d.hl, &d.hh})
      if (band->width() != hw || band->height() != hh)
        fail(Errc::invalid_subbands, "idwt2: subband dimensions do not match level " + std::to_string(i + 1));
    cur = detail::synthesize_level(cur, d, size, h, g);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Block feature: the glyph is placed on a canvas x canvas frame, transformed,
// and the frame is cut into a grid x grid array of equal blocks. Per block:
//   [ink density, mean |LH|, mean |HL|, mean |HH|, mean |LL|]
// Detail means average the block's footprint in each level's subband, then
// average over levels; LL is the final approximation.

enum class WaveletPlacement {
  centered,  // gravity center moved to the canvas center
  frame,     // raster center on the canvas center; ink position is kept
};

struct WaveletFeatureParams {
  WaveletSpec spec{};
  int canvas = 512;
  int grid = 4;
  WaveletPlacement placement = WaveletPlacement::centered;
};

inline constexpr int kWaveletBlockValues = 5;

inline std::vector<double> wavelet_feature(const BinaryImage& glyph, const WaveletFeatureParams& p = {}) {
  require(p.canvas >= p.grid && p.grid >= 1, Errc::invalid_parameter, "wavelet feature: bad canvas/grid");
  const Moments m = ink_moments(glyph);
  require(m.count > 0, Errc::invalid_input, "wavelet feature: glyph has no ink");

  int dx = 0, dy = 0;
  if (p.placement == WaveletPlacement::centered) {
    const Point c = m.rounded_centroid();
    dx = p.canvas / 2 - c.x;
    dy = p.canvas / 2 - c.y;
  } else {
    dx = (p.canvas - glyph.width()) / 2;
    dy = (p.canvas - glyph.height()) / 2;
  }
  BinaryImage placed(p.canvas, p.canvas, 0);
  if (!blit_shifted(glyph, dx, dy, placed)) fail(Errc::glyph_too_large, "wavelet feature: glyph exceeds the canvas");

  const auto bands = dwt2(to_real(placed), p.spec);
  const int g = p.grid;
  std::vector<double> out(static_cast<std::size_t>(g * g * kWaveletBlockValues), 0.0);

  // Footprint of block index b in an axis of `n` samples (canvas maps to n).
  auto span_of = [&](int b, int n) {
    int lo = static_cast<int>(static_cast<long long>(b) * n / g);
    int hi = static_cast<int>((static_cast<long long>(b + 1) * n + g - 1) / g);
    if (hi <= lo) hi = lo + 1;
    return std::pair<int, int>{lo, std::min(hi, n)};
  };
  auto block_mean_abs = [&](const RealImage& band, int bx, int by) {
    auto [x0, x1] = span_of(bx, band.width());
    auto [y0, y1] = span_of(by, band.height());
    double s = 0.0;
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) s += std::abs(band(x, y));
    return s / static_cast<double>((x1 - x0) * (y1 - y0));
  };

  const double levels = static_cast<double>(bands.details.size());
  for (int by = 0; by < g; ++by)
    for (int bx = 0; bx < g; ++bx) {
      double* v = &out[static_cast<std::size_t>((by * g + bx) * kWaveletBlockValues)];
      const int x0 = bx * p.canvas / g, x1 = (bx + 1) * p.canvas / g;
      const int y0 = by * p.canvas / g, y1 = (by + 1) * p.canvas / g;
      long ink = 0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) ink += placed(x, y);
      v[0] = static_cast<double>(ink) / static_cast<double>((x1 - x0) * (y1 - y0));
      for (const auto& d : bands.details) {
        v[1] += block_mean_abs(d.lh, bx, by) / levels;
        v[2] += block_mean_abs(d.hl, bx, by) / levels;
        v[3] += block_mean_abs(d.hh, bx, by) / levels;
      }
      v[4] = block_mean_abs(bands.ll, bx, by);
    }
  return out;
}

}  // namespace glyphfeat
