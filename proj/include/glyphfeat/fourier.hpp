#pragma once

// Elliptic Fourier descriptors of a chain-coded contour.
//
// x(t), y(t) are the piecewise-linear arc-length parameterizations of the
// contour with period T. The coefficients are the exact integrals
//   a_n = 2/T * int x(t) cos(2 pi n t / T) dt,   b_n = ... sin(...)
// (and c_n, d_n for y), evaluated link by link in closed form:
//   a_n = T / (2 n^2 pi^2) * sum_p (dx_p / dt_p) (cos phi_p - cos phi_{p-1})
// with phi_p = 2 pi n t_p / T. A0, C0 are the period means of x and y.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "glyphfeat/contour.hpp"
#include "glyphfeat/error.hpp"

namespace glyphfeat {

struct Harmonic {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

struct FourierDescriptor {
  double a0 = 0.0;  // mean of x(t)
  double c0 = 0.0;  // mean of y(t)
  std::vector<Harmonic> harmonics;
};

inline FourierDescriptor elliptic_fourier(const ContourParam& p, int harmonics) {
  require(harmonics >= 1, Errc::invalid_parameter, "elliptic_fourier: need at least one harmonic");
  require(p.points.size() >= 2 && p.points.size() == p.t.size() && p.perimeter > 0.0, Errc::invalid_input,
          "elliptic_fourier: invalid contour parameterization");
  const std::size_t links = p.points.size() - 1;
  const double period = p.perimeter;
  const auto n_harm = static_cast<std::size_t>(harmonics);

  FourierDescriptor out;
  out.harmonics.assign(n_harm, {});

  for (std::size_t k = 1; k <= links; ++k) {
    const double dt = p.t[k] - p.t[k - 1];
    out.a0 += dt * 0.5 * (p.points[k - 1].x + p.points[k].x);
    out.c0 += dt * 0.5 * (p.points[k - 1].y + p.points[k].y);
  }
  out.a0 /= period;
  out.c0 /= period;

  // e^{i n phi} at the previous link endpoint, for every harmonic n; phi_0 = 0.
  std::vector<std::complex<double>> prev(n_harm, {1.0, 0.0});
  for (std::size_t k = 1; k <= links; ++k) {
    const double dt = p.t[k] - p.t[k - 1];
    const double sx = (p.points[k].x - p.points[k - 1].x) / dt;
    const double sy = (p.points[k].y - p.points[k - 1].y) / dt;
    const double phi = 2.0 * std::numbers::pi * p.t[k] / period;
    const std::complex<double> base(std::cos(phi), std::sin(phi));
    std::complex<double> cur = base;
    for (std::size_t n = 0; n < n_harm; ++n) {
      // Refresh the recurrence every few steps to bound rounding drift.
      if (n > 0 && n % 8 == 0) {
        const double a = static_cast<double>(n + 1) * phi;
        cur = {std::cos(a), std::sin(a)};
      }
      const double dcos = cur.real() - prev[n].real();
      const double dsin = cur.imag() - prev[n].imag();
      auto& h = out.harmonics[n];
      h.a += sx * dcos;
      h.b += sx * dsin;
      h.c += sy * dcos;
      h.d += sy * dsin;
      prev[n] = cur;
      cur *= base;
    }
  }
  for (std::size_t n = 0; n < n_harm; ++n) {
    const double nn = static_cast<double>(n + 1);
    const double scale = period / (2.0 * nn * nn * std::numbers::pi * std::numbers::pi);
    auto& h = out.harmonics[n];
    h.a *= scale;
    h.b *= scale;
    h.c *= scale;
    h.d *= scale;
  }
  return out;
}

/// Evaluates the truncated series at `samples` uniformly spaced phases.
inline std::vector<PointD> reconstruct(const FourierDescriptor& d, int samples) {
  require(samples >= 3, Errc::invalid_parameter, "reconstruct: need at least 3 samples");
  std::vector<PointD> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const double phase = 2.0 * std::numbers::pi * s / samples;
    PointD p{d.a0, d.c0};
    for (std::size_t n = 0; n < d.harmonics.size(); ++n) {
      const double a = static_cast<double>(n + 1) * phase;
      const double c = std::cos(a), sn = std::sin(a);
      p.x += d.harmonics[n].a * c + d.harmonics[n].b * sn;
      p.y += d.harmonics[n].c * c + d.harmonics[n].d * sn;
    }
    out.push_back(p);
  }
  return out;
}

/// [a_1, b_1, c_1, d_1, ..., a_N, b_N, c_N, d_N]; the DC terms are dropped.
inline std::vector<double> fourier_feature(const FourierDescriptor& d) {
  std::vector<double> v;
  v.reserve(4 * d.harmonics.size());
  for (const auto& h : d.harmonics) {
    v.push_back(h.a);
    v.push_back(h.b);
    v.push_back(h.c);
    v.push_back(h.d);
  }
  return v;
}

/// Descriptor of the outer contour of the largest ink component.
inline std::vector<double> fourier_glyph_feature(const BinaryImage& glyph, int harmonics = 20) {
  require(harmonics >= 1, Errc::invalid_parameter, "elliptic_fourier: need at least one harmonic");
  const auto comps = connected_components(glyph);
  require(!comps.empty(), Errc::invalid_input, "fourier feature: glyph has no ink");
  const auto& comp = comps[largest_component(comps)];
  const auto chain = to_chain_code(trace_contour(glyph, comp));
  if (chain.codes.empty()) return std::vector<double>(4 * static_cast<std::size_t>(harmonics), 0.0);
  return fourier_feature(elliptic_fourier(parameterize(chain), harmonics));
}

}  // namespace glyphfeat
