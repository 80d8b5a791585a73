#pragma once

// Line Hough transform: rho = x cos(theta) + y sin(theta), theta in degrees.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "glyphfeat/components.hpp"
#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat {

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

inline double hough_rho(double x, double y, double theta_deg) {
  const auto [c, s] = cos_sin_deg(theta_deg);
  return x * c + y * s;
}

struct HoughConfig {
  double theta_min = 85.0;  // inclusive, degrees
  double theta_max = 95.0;  // inclusive, degrees
  double theta_res = 1.0;
  double rho_res = 1.0;
  double rho_extent = 0.0;  // minimum |rho| covered; grown to fit the voters
  PointD origin{};
};

/// Vote counts over (theta, rho) bin centers, theta-major.
class HoughAccumulator {
 public:
  HoughAccumulator(const HoughConfig& cfg, double needed_extent) : cfg_(cfg) {
    require(cfg.theta_res > 0.0 && cfg.rho_res > 0.0, Errc::invalid_parameter, "hough resolutions must be positive");
    require(cfg.theta_max >= cfg.theta_min, Errc::invalid_parameter, "hough theta range is empty");
    theta_bins_ = static_cast<int>(std::floor((cfg.theta_max - cfg.theta_min) / cfg.theta_res + 1e-9)) + 1;
    rho_extent_ = std::max({cfg.rho_extent, needed_extent, 0.0});
    rho_bins_ = static_cast<int>(std::lround(2.0 * rho_extent_ / cfg.rho_res)) + 1;
    counts_.assign(static_cast<std::size_t>(theta_bins_) * static_cast<std::size_t>(rho_bins_), 0);
    cos_.resize(static_cast<std::size_t>(theta_bins_));
    sin_.resize(static_cast<std::size_t>(theta_bins_));
    for (int i = 0; i < theta_bins_; ++i) {
      const auto [c, s] = cos_sin_deg(theta(i));
      cos_[static_cast<std::size_t>(i)] = c;
      sin_[static_cast<std::size_t>(i)] = s;
    }
  }

  int theta_bins() const noexcept { return theta_bins_; }
  int rho_bins() const noexcept { return rho_bins_; }
  double theta_res() const noexcept { return cfg_.theta_res; }
  double rho_res() const noexcept { return cfg_.rho_res; }
  double rho_extent() const noexcept { return rho_extent_; }
  PointD origin() const noexcept { return cfg_.origin; }

  double theta(int i) const noexcept { return cfg_.theta_min + i * cfg_.theta_res; }
  double rho(int j) const noexcept { return -rho_extent_ + j * cfg_.rho_res; }

  double rho_of(PointD p, int theta_bin) const noexcept {
    const auto i = static_cast<std::size_t>(theta_bin);
    return (p.x - cfg_.origin.x) * cos_[i] + (p.y - cfg_.origin.y) * sin_[i];
  }

  int rho_bin(double rho) const noexcept {
    const long j = std::lround((rho + rho_extent_) / cfg_.rho_res);
    return static_cast<int>(std::clamp<long>(j, 0, rho_bins_ - 1));
  }

  std::int64_t& at(int theta_bin, int rho_bin) noexcept { return counts_[index(theta_bin, rho_bin)]; }
  std::int64_t at(int theta_bin, int rho_bin) const noexcept { return counts_[index(theta_bin, rho_bin)]; }

  std::span<const std::int64_t> counts() const noexcept { return counts_; }

  std::int64_t total_votes() const noexcept {
    std::int64_t s = 0;
    for (auto c : counts_) s += c;
    return s;
  }

  void vote(PointD p, int weight = 1) noexcept {
    for (int i = 0; i < theta_bins_; ++i) at(i, rho_bin(rho_of(p, i))) += weight;
  }

 private:
  std::size_t index(int ti, int rj) const noexcept {
    return static_cast<std::size_t>(ti) * static_cast<std::size_t>(rho_bins_) + static_cast<std::size_t>(rj);
  }

  HoughConfig cfg_;
  int theta_bins_ = 0;
  int rho_bins_ = 0;
  double rho_extent_ = 0.0;
  std::vector<std::int64_t> counts_;
  std::vector<double> cos_, sin_;
};

/// Every point votes once per theta bin. The rho extent grows to cover the
/// farthest point from the origin.
inline HoughAccumulator accumulate(std::span<const PointD> points, const HoughConfig& cfg) {
  double needed = 0.0;
  for (auto p : points) needed = std::max(needed, std::hypot(p.x - cfg.origin.x, p.y - cfg.origin.y));
  HoughAccumulator acc(cfg, std::ceil(needed));
  for (auto p : points) acc.vote(p);
  return acc;
}

struct HoughPeak {
  double rho = 0.0;
  double theta = 0.0;  // degrees
  std::int64_t votes = 0;
};

struct PeakAssignment {
  HoughPeak peak;
  std::vector<std::size_t> voters;
};

/// Repeatedly takes the strongest cell (rho_i, theta_i), claims every
/// unclaimed voter whose rho at theta_i lies within `window` rho bins of it,
/// and withdraws those voters' votes, until the strongest cell holds fewer
/// than `min_votes`. Ties go to the lowest theta bin, then the lowest rho bin.
inline std::vector<PeakAssignment> detect_peaks(const HoughAccumulator& acc, std::span<const PointD> voters,
                                                std::int64_t min_votes = 3, int window = 5) {
  require(min_votes >= 1, Errc::invalid_parameter, "detect_peaks: min_votes must be >= 1");
  HoughAccumulator work = acc;
  std::vector<bool> claimed(voters.size(), false);
  std::vector<PeakAssignment> out;
  for (;;) {
    std::int64_t best = 0;
    int best_t = 0, best_r = 0;
    for (int t = 0; t < work.theta_bins(); ++t)
      for (int r = 0; r < work.rho_bins(); ++r)
        if (work.at(t, r) > best) {
          best = work.at(t, r);
          best_t = t;
          best_r = r;
        }
    if (best < min_votes) break;

    PeakAssignment pa;
    pa.peak = {work.rho(best_r), work.theta(best_t), best};
    for (std::size_t v = 0; v < voters.size(); ++v) {
      if (claimed[v]) continue;
      if (std::abs(work.rho_bin(work.rho_of(voters[v], best_t)) - best_r) <= window) {
        claimed[v] = true;
        pa.voters.push_back(v);
        work.vote(voters[v], -1);
      }
    }
    if (pa.voters.empty()) break;  // votes not traceable to these voters
    out.push_back(std::move(pa));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Character-level Hough feature.
//
// Boundary pixels vote in a full [0, 180) degree accumulator with
// coordinates measured from the gravity center. Two histograms follow:
//   * theta profile: per-angle vote concentration sum_rho count^2, pooled
//     into theta_bins and circularly shifted so its maximum comes first.
//     (The plain per-angle vote total is the same for every angle.)
//   * |rho| histogram: all votes binned by |rho| over [0, rho_extent].
// Both are L1-normalized.

struct HoughFeatureParams {
  int theta_bins = 36;
  int rho_bins = 16;
  double rho_extent = 64.0;
};

namespace detail {

// Pixels of `pixels` (given as a mask) with a 4-neighbor outside the mask.
inline std::vector<Point> boundary_pixels(const BinaryImage& mask) {
  std::vector<Point> out;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask(x, y) && (!is_ink(mask, x - 1, y) || !is_ink(mask, x + 1, y) || !is_ink(mask, x, y - 1) ||
                         !is_ink(mask, x, y + 1)))
        out.push_back({x, y});
  return out;
}

inline std::vector<double> hough_shape_feature(std::span<const Point> voters, const Moments& m,
                                               const HoughFeatureParams& p) {
  require(p.theta_bins >= 1 && p.theta_bins <= 180 && p.rho_bins >= 1 && p.rho_extent > 0.0,
          Errc::invalid_parameter, "hough feature: invalid histogram parameters");
  require(m.count > 0 && !voters.empty(), Errc::invalid_input, "hough feature: empty component");
  // n*x - sum_x is an exact integer, so the centered coordinates are
  // identical for every integer translation of the input.
  const double n = static_cast<double>(m.count);
  std::vector<PointD> centered;
  centered.reserve(voters.size());
  for (Point v : voters)
    centered.push_back({static_cast<double>(m.count * v.x - m.sum_x) / n,
                        static_cast<double>(m.count * v.y - m.sum_y) / n});

  HoughConfig cfg;
  cfg.theta_min = 0.0;
  cfg.theta_max = 179.0;
  cfg.theta_res = 1.0;
  cfg.rho_res = 1.0;
  const auto acc = accumulate(centered, cfg);

  const auto tb = static_cast<std::size_t>(p.theta_bins);
  const auto rb = static_cast<std::size_t>(p.rho_bins);
  std::vector<double> feature(tb + rb, 0.0);
  std::vector<double> theta_profile(tb, 0.0);
  for (int t = 0; t < acc.theta_bins(); ++t) {
    const auto bin = static_cast<std::size_t>(t) * tb / 180;
    double energy = 0.0;
    for (int r = 0; r < acc.rho_bins(); ++r) {
      const auto c = static_cast<double>(acc.at(t, r));
      if (c == 0.0) continue;
      energy += c * c;
      auto rbin = static_cast<std::size_t>(std::abs(acc.rho(r)) / p.rho_extent * static_cast<double>(rb));
      feature[tb + std::min(rbin, rb - 1)] += c;
    }
    theta_profile[bin] += energy;
  }

  double theta_total = 0.0, rho_total = 0.0;
  for (double v : theta_profile) theta_total += v;
  for (std::size_t i = 0; i < rb; ++i) rho_total += feature[tb + i];
  const auto peak = static_cast<std::size_t>(
      std::distance(theta_profile.begin(), std::max_element(theta_profile.begin(), theta_profile.end())));
  for (std::size_t i = 0; i < tb; ++i) feature[i] = theta_profile[(i + peak) % tb] / theta_total;
  for (std::size_t i = 0; i < rb; ++i) feature[tb + i] /= rho_total;
  return feature;
}

}  // namespace detail

inline std::vector<double> hough_char_feature(const BinaryImage& img, const ConnectedComponent& comp,
                                              const HoughFeatureParams& p = {}) {
  require(comp.area >= 1, Errc::invalid_input, "hough feature: empty component");
  const auto pixels = component_pixels(img, comp);
  BinaryImage mask(img.width(), img.height(), 0);
  Moments m;
  for (Point q : pixels) {
    mask(q.x, q.y) = 1;
    m.add(q);
  }
  return detail::hough_shape_feature(detail::boundary_pixels(mask), m, p);
}

/// Same feature over all ink of a glyph image, treated as one shape.
inline std::vector<double> hough_glyph_feature(const BinaryImage& glyph, const HoughFeatureParams& p = {}) {
  const Moments m = ink_moments(glyph);
  require(m.count > 0, Errc::invalid_input, "hough feature: glyph has no ink");
  return detail::hough_shape_feature(detail::boundary_pixels(glyph), m, p);
}

}  // namespace glyphfeat
