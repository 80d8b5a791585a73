#pragma once

// Block-based Hough text-line detection.
//
// Components are split by size relative to the average character height AH
// (AW = AH):
//   subset 1: 0.5 AH < H < 3 AH and 1.5 AW < W < page width   (voters)
//   subset 2: H >= 3 AH                                         (may span lines)
//   subset 3: everything else                                   (marks, dots)
// Subset-1 gravity centers vote for theta in [85, 95] degrees with a rho
// resolution of 0.2 AH. Candidate lines whose crossings with the vertical
// line x = width / 2 are too close are merged, then subsets 2 and 3 are
// attached to the resulting lines.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "glyphfeat/binarize.hpp"
#include "glyphfeat/components.hpp"
#include "glyphfeat/error.hpp"
#include "glyphfeat/hough.hpp"

namespace glyphfeat {

struct SubsetPartition {
  std::vector<int> subset1, subset2, subset3;  // component ids
};

inline SubsetPartition partition_subsets(std::span<const ConnectedComponent> comps, const PageMetrics& m,
                                         int image_width) {
  require(m.average_height > 0.0, Errc::invalid_parameter, "partition_subsets: AH must be positive");
  const double ah = m.average_height, aw = m.average_width, omega = image_width;
  SubsetPartition out;
  for (const auto& c : comps) {
    const double h = c.height(), w = c.width();
    if (0.5 * ah < h && h < 3.0 * ah && 1.5 * aw < w && w < omega)
      out.subset1.push_back(c.id);
    else if (h >= 3.0 * ah)
      out.subset2.push_back(c.id);
    else
      out.subset3.push_back(c.id);
  }
  return out;
}

struct TextLine {
  int line_id = 0;
  double rho = 0.0;
  double theta = 0.0;  // degrees
  std::vector<int> members;  // component ids, ascending
};

struct TextLineParams {
  double theta_min = 85.0;
  double theta_max = 95.0;
  double theta_res = 1.0;
  double rho_factor = 0.2;  // rho resolution = rho_factor * AH
  int peak_window = 5;      // rho bins either side of a peak
  std::int64_t min_votes = 3;
  // Adjacent candidates closer than merge_factor * (mean adjacent gap) merge.
  double merge_factor = 0.5;
  Connectivity connectivity = Connectivity::eight;
};

namespace detail {

struct LineCandidate {
  double rho = 0.0, theta = 0.0, crossing = 0.0;
  std::int64_t votes = 0;
  std::vector<int> members;
};

inline double line_y_at(double rho, double theta_deg, double x) {
  const auto [c, s] = cos_sin_deg(theta_deg);
  return (rho - x * c) / s;
}

inline double line_distance(double rho, double theta_deg, PointD p) { return std::abs(hough_rho(p.x, p.y, theta_deg) - rho); }

}  // namespace detail

inline std::vector<TextLine> detect_text_lines(const BinaryImage& img, const TextLineParams& params = {}) {
  const auto comps = connected_components(img, params.connectivity);
  if (comps.empty()) fail(Errc::empty_page, "detect_text_lines: page has no components");
  const PageMetrics metrics = page_metrics(comps);
  const auto subsets = partition_subsets(comps, metrics, img.width());
  auto comp_of = [&](int id) -> const ConnectedComponent& { return comps[static_cast<std::size_t>(id - 1)]; };
  const double mid_x = img.width() / 2.0;

  std::vector<PointD> voters;
  for (int id : subsets.subset1) voters.push_back(comp_of(id).gravity_center);

  HoughConfig cfg;
  cfg.theta_min = params.theta_min;
  cfg.theta_max = params.theta_max;
  cfg.theta_res = params.theta_res;
  cfg.rho_res = params.rho_factor * metrics.average_height;
  std::vector<PeakAssignment> peaks;
  if (!voters.empty()) peaks = detect_peaks(accumulate(voters, cfg), voters, params.min_votes, params.peak_window);

  if (peaks.empty()) {
    // No usable subset-1 evidence: the whole page is one line.
    TextLine only;
    only.line_id = 1;
    only.theta = 90.0;
    for (const auto& c : comps) {
      only.rho += c.gravity_center.y;
      only.members.push_back(c.id);
    }
    only.rho /= static_cast<double>(comps.size());
    return {only};
  }

  std::vector<detail::LineCandidate> cands;
  for (const auto& pa : peaks) {
    detail::LineCandidate c{pa.peak.rho, pa.peak.theta, detail::line_y_at(pa.peak.rho, pa.peak.theta, mid_x),
                            pa.peak.votes, {}};
    for (auto v : pa.voters) c.members.push_back(subsets.subset1[v]);
    cands.push_back(std::move(c));
  }
  std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.crossing < b.crossing; });

  // Merge runs of adjacent candidates whose crossing gap is small relative to
  // the mean gap of the pre-merge candidate list.
  std::vector<detail::LineCandidate> lines;
  if (cands.size() >= 2) {
    double mean_gap = 0.0;
    for (std::size_t i = 1; i < cands.size(); ++i) mean_gap += cands[i].crossing - cands[i - 1].crossing;
    mean_gap /= static_cast<double>(cands.size() - 1);
    lines.push_back(cands[0]);
    for (std::size_t i = 1; i < cands.size(); ++i) {
      if (cands[i].crossing - cands[i - 1].crossing < params.merge_factor * mean_gap) {
        auto& into = lines.back();
        if (cands[i].votes > into.votes) {
          into.rho = cands[i].rho;
          into.theta = cands[i].theta;
          into.crossing = cands[i].crossing;
          into.votes = cands[i].votes;
        }
        into.members.insert(into.members.end(), cands[i].members.begin(), cands[i].members.end());
      } else {
        lines.push_back(cands[i]);
      }
    }
  } else {
    lines = cands;
  }

  auto nearest_line = [&](PointD p) {
    std::size_t best = 0;
    double best_d = detail::line_distance(lines[0].rho, lines[0].theta, p);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      double d = detail::line_distance(lines[i].rho, lines[i].theta, p);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  };

  // Subset-1 components no peak claimed.
  std::vector<bool> placed(comps.size() + 1, false);
  for (const auto& l : lines)
    for (int id : l.members) placed[static_cast<std::size_t>(id)] = true;
  for (int id : subsets.subset1)
    if (!placed[static_cast<std::size_t>(id)]) lines[nearest_line(comp_of(id).gravity_center)].members.push_back(id);

  // Subset 2: every line crossing the component's box; nearest line otherwise.
  for (int id : subsets.subset2) {
    const auto& bb = comp_of(id).bbox;
    bool any = false;
    for (auto& l : lines) {
      const double ya = detail::line_y_at(l.rho, l.theta, bb.x0);
      const double yb = detail::line_y_at(l.rho, l.theta, bb.x1);
      if (std::max(ya, yb) >= bb.y0 && std::min(ya, yb) <= bb.y1) {
        l.members.push_back(id);
        any = true;
      }
    }
    if (!any) lines[nearest_line(comp_of(id).gravity_center)].members.push_back(id);
  }

  for (int id : subsets.subset3) lines[nearest_line(comp_of(id).gravity_center)].members.push_back(id);

  std::vector<TextLine> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    TextLine tl{static_cast<int>(i) + 1, lines[i].rho, lines[i].theta, std::move(lines[i].members)};
    std::sort(tl.members.begin(), tl.members.end());
    out.push_back(std::move(tl));
  }
  return out;
}

/// Binarizes a grayscale page first (Sauvola by default).
inline std::vector<TextLine> detect_text_lines(const GrayImage& page, const TextLineParams& params = {},
                                               const BinarizeMethod& method = Sauvola{}) {
  return detect_text_lines(binarize(page, method), params);
}

}  // namespace glyphfeat
