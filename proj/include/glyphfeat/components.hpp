#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat {

enum class Connectivity { four = 4, eight = 8 };

/// Inclusive pixel bounds.
struct BBox {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int width() const noexcept { return x1 - x0 + 1; }
  int height() const noexcept { return y1 - y0 + 1; }
  bool contains(double x, double y) const noexcept { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  friend bool operator==(const BBox&, const BBox&) = default;
};

/// A connected ink region. `seed` is its first pixel in raster order; a flood
/// fill from the seed under `connectivity` recovers exactly its pixels.
struct ConnectedComponent {
  int id = 0;
  BBox bbox;
  long area = 0;
  PointD gravity_center;
  Moments moments;
  Point seed;
  Connectivity connectivity = Connectivity::eight;

  int height() const noexcept { return bbox.height(); }
  int width() const noexcept { return bbox.width(); }
};

struct PageMetrics {
  double average_height = 0.0;  // AH
  double average_width = 0.0;   // AW, taken equal to AH
};

namespace detail {

inline std::span<const Point> neighbor_offsets(Connectivity c) {
  static constexpr Point four[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  static constexpr Point eight[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  if (c == Connectivity::four) return four;
  return eight;
}

// Visits every pixel of the region containing `seed`, marking `visited`.
template <typename Visit>
void flood_fill(const BinaryImage& img, Point seed, Connectivity c, Raster<std::uint8_t>& visited, Visit&& visit) {
  std::vector<Point> stack{seed};
  visited(seed.x, seed.y) = 1;
  const auto offsets = neighbor_offsets(c);
  while (!stack.empty()) {
    Point p = stack.back();
    stack.pop_back();
    visit(p);
    for (Point d : offsets) {
      int nx = p.x + d.x, ny = p.y + d.y;
      if (img.contains(nx, ny) && img(nx, ny) && !visited(nx, ny)) {
        visited(nx, ny) = 1;
        stack.push_back({nx, ny});
      }
    }
  }
}

}  // namespace detail

struct Labeling {
  Raster<int> labels;  // 0 = background, otherwise the component id
  std::vector<ConnectedComponent> components;
};

/// Labels ink regions. Components are sorted by (y0, x0) and numbered from 1.
inline Labeling label_components(const BinaryImage& img, Connectivity c = Connectivity::eight) {
  Labeling out{Raster<int>(img.width(), img.height(), 0), {}};
  Raster<std::uint8_t> visited(img.width(), img.height(), 0);
  std::vector<std::vector<Point>> members;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      if (!img(x, y) || visited(x, y)) continue;
      ConnectedComponent cc;
      cc.seed = {x, y};
      cc.connectivity = c;
      cc.bbox = {x, y, x, y};
      std::vector<Point> pts;
      detail::flood_fill(img, cc.seed, c, visited, [&](Point p) {
        pts.push_back(p);
        cc.moments.add(p);
        cc.bbox.x0 = std::min(cc.bbox.x0, p.x);
        cc.bbox.x1 = std::max(cc.bbox.x1, p.x);
        cc.bbox.y0 = std::min(cc.bbox.y0, p.y);
        cc.bbox.y1 = std::max(cc.bbox.y1, p.y);
      });
      cc.area = static_cast<long>(cc.moments.count);
      cc.gravity_center = cc.moments.centroid();
      out.components.push_back(cc);
      members.push_back(std::move(pts));
    }

  std::vector<std::size_t> order(out.components.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = out.components[a].bbox;
    const auto& cb = out.components[b].bbox;
    return ca.y0 != cb.y0 ? ca.y0 < cb.y0 : ca.x0 < cb.x0;
  });
  std::vector<ConnectedComponent> sorted;
  sorted.reserve(order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    ConnectedComponent cc = out.components[order[rank]];
    cc.id = static_cast<int>(rank) + 1;
    for (Point p : members[order[rank]]) out.labels(p.x, p.y) = cc.id;
    sorted.push_back(cc);
  }
  out.components = std::move(sorted);
  return out;
}

inline std::vector<ConnectedComponent> connected_components(const BinaryImage& img,
                                                            Connectivity c = Connectivity::eight) {
  return label_components(img, c).components;
}

/// Pixels of `comp` within `img`, in flood-fill order.
inline std::vector<Point> component_pixels(const BinaryImage& img, const ConnectedComponent& comp) {
  require(is_ink(img, comp.seed.x, comp.seed.y), Errc::invalid_input, "component has no pixels in this image");
  std::vector<Point> pts;
  Raster<std::uint8_t> visited(img.width(), img.height(), 0);
  detail::flood_fill(img, comp.seed, comp.connectivity, visited, [&](Point p) { pts.push_back(p); });
  return pts;
}

inline Moments component_moments(const BinaryImage& img, const ConnectedComponent& comp) {
  Moments m;
  for (Point p : component_pixels(img, comp)) m.add(p);
  return m;
}

/// Mean of the component's pixel coordinates, recomputed from the image.
inline PointD gravity_center(const BinaryImage& img, const ConnectedComponent& comp) {
  return component_moments(img, comp).centroid();
}

inline PageMetrics page_metrics(std::span<const ConnectedComponent> components) {
  require(!components.empty(), Errc::invalid_input, "page_metrics: no components");
  double sum = 0.0;
  for (const auto& c : components) sum += c.height();
  const double ah = sum / static_cast<double>(components.size());
  return {ah, ah};
}

/// Index of the component with the largest area; ties go to the lowest id.
inline std::size_t largest_component(std::span<const ConnectedComponent> components) {
  require(!components.empty(), Errc::invalid_input, "no components");
  std::size_t best = 0;
  for (std::size_t i = 1; i < components.size(); ++i)
    if (components[i].area > components[best].area) best = i;
  return best;
}

}  // namespace glyphfeat
