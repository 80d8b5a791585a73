#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "glyphfeat/gabor.hpp"
#include "helpers.hpp"

using namespace glyphfeat;

namespace {

RealImage random_real(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealImage img(w, h);
  for (auto& v : img.pixels()) v = u(rng);
  return img;
}

// Direct evaluation of the kernel formula.
double gabor_formula(int x, int y, double theta, const GaborParams& p) {
  const double xr = x * std::cos(theta) + y * std::sin(theta);
  const double yr = y * std::cos(theta) - x * std::sin(theta);
  return std::exp(-0.5 * (std::pow(xr / p.sigma_x, 2) + std::pow(yr / p.sigma_y, 2))) *
         std::cos(2.0 * std::numbers::pi * xr / p.wavelength);
}

std::vector<double> block_energy(const std::vector<double>& f, int m) {
  const std::size_t cells = f.size() / static_cast<std::size_t>(m);
  std::vector<double> e(static_cast<std::size_t>(m), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) e[i / cells] += f[i];
  return e;
}

BinaryImage bar() { return testutil::filled_rect(60, 60, 10, 27, 49, 32); }

}  // namespace

TEST(GaborKernel, CenterTapIsOne) {
  for (double theta : {0.0, 0.3, std::numbers::pi / 2, 2.0}) {
    const GaborKernel k(theta, GaborParams{});
    EXPECT_EQ(k.at(0, 0), 1.0);
  }
}

TEST(GaborKernel, MatchesFormula) {
  GaborParams p;
  p.wavelength = 3.0;
  p.sigma_x = 2.5;
  for (int k = 0; k < 6; ++k) {
    const double theta = gabor_orientation(k, 6);
    const GaborKernel ker(theta, p);
    for (int y = -p.kernel_radius; y <= p.kernel_radius; ++y)
      for (int x = -p.kernel_radius; x <= p.kernel_radius; ++x)
        EXPECT_NEAR(ker.at(x, y), gabor_formula(x, y, theta, p), 1e-14);
  }
  const GaborKernel k0(0.0, GaborParams{});
  EXPECT_NEAR(k0.at(2, 0), std::exp(-0.5) * std::cos(std::numbers::pi), 1e-15);
  EXPECT_NEAR(k0.at(0, 1), std::exp(-0.5), 1e-15);
}

TEST(GaborKernel, QuarterTurnRelation) {
  const GaborParams p;
  const GaborKernel k0(0.0, p), k90(std::numbers::pi / 2, p);
  for (int y = -p.kernel_radius; y <= p.kernel_radius; ++y)
    for (int x = -p.kernel_radius; x <= p.kernel_radius; ++x) EXPECT_NEAR(k90.at(x, y), k0.at(y, -x), 1e-12);
}

TEST(GaborKernel, OrientationsAreEvenlySpaced) {
  EXPECT_EQ(gabor_orientation(0, 4), 0.0);
  EXPECT_DOUBLE_EQ(gabor_orientation(1, 4), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(gabor_orientation(3, 4), 3 * std::numbers::pi / 2);
}

TEST(GaborKernel, RejectsBadParameters) {
  GaborParams p;
  p.kernel_radius = 0;
  EXPECT_THROW(GaborKernel(0.0, p), Error);
  p = GaborParams{};
  p.wavelength = 0.0;
  try {
    GaborKernel(0.0, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_parameter);
  }
}

TEST(GaborConvolve, ZeroImageGivesZero) {
  const auto out = convolve(RealImage(20, 20, 0.0), GaborKernel(0.7, GaborParams{}));
  for (double v : out.pixels()) EXPECT_EQ(v, 0.0);
}

TEST(GaborConvolve, ImpulseResponseIsTheFlippedKernel) {
  const GaborKernel k(0.9, GaborParams{});
  RealImage img(31, 31, 0.0);
  img(15, 15) = 1.0;
  const auto out = convolve(img, k);
  for (int v = -k.radius(); v <= k.radius(); ++v)
    for (int u = -k.radius(); u <= k.radius(); ++u) EXPECT_DOUBLE_EQ(out(15 - u, 15 - v), k.at(u, v));
  EXPECT_EQ(out(0, 0), 0.0);
}

TEST(GaborConvolve, UniformInteriorIsScaledTapSum) {
  const GaborKernel k(std::numbers::pi / 4, GaborParams{});
  double sum = 0.0;
  for (double t : k.taps()) sum += t;
  const auto out = convolve(RealImage(40, 40, 2.5), k);
  for (int y = k.radius(); y < 40 - k.radius(); ++y)
    for (int x = k.radius(); x < 40 - k.radius(); ++x) EXPECT_NEAR(out(x, y), 2.5 * sum, 1e-12);
}

TEST(GaborConvolve, IsLinear) {
  const GaborKernel k(1.3, GaborParams{});
  const auto a = random_real(25, 19, 1), b = random_real(25, 19, 2);
  RealImage mix(25, 19);
  for (std::size_t i = 0; i < mix.size(); ++i) mix.pixels()[i] = 2.0 * a.pixels()[i] - 0.5 * b.pixels()[i];
  const auto ca = convolve(a, k), cb = convolve(b, k), cm = convolve(mix, k);
  for (std::size_t i = 0; i < mix.size(); ++i)
    EXPECT_NEAR(cm.pixels()[i], 2.0 * ca.pixels()[i] - 0.5 * cb.pixels()[i], 1e-9);
}

TEST(GaborFeature, LengthFollowsOrientationsAndGrid) {
  GaborFeatureParams p;
  EXPECT_EQ(gabor_feature(bar(), p).size(), 64u);
  p.filter.orientations = 1;
  EXPECT_EQ(gabor_feature(bar(), p).size(), 16u);
  p.filter.orientations = 6;
  p.grid = 3;
  EXPECT_EQ(gabor_feature(bar(), p).size(), 54u);
}

TEST(GaborFeature, IgnoresTranslation) {
  const auto img = testutil::from_rows({"..........", ".#######..", ".#....#...", ".#....##..", ".######...",
                                        ".....#....", ".....####.", ".........."});
  const auto a = gabor_feature(img);
  const auto b = gabor_feature(testutil::shifted(img, 21, 8, 50, 40));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
}

TEST(GaborFeature, AlignedBarMatchesItsQuarterTurn) {
  const auto a = gabor_feature(bar());
  const auto b = gabor_feature(testutil::rotate90(bar()));
  EXPECT_LT(testutil::l2(a, b) / testutil::norm(a), 0.1);
}

TEST(GaborFeature, QuarterTurnPermutesOrientationBlocks) {
  GaborFeatureParams p;
  p.align = false;
  const auto glyph = testutil::from_rows({"............", ".########...", ".#.....#....", ".#.....##...",
                                          ".#######....", "......#.....", "......#####.", "............"});
  const auto a = block_energy(gabor_feature(glyph, p), 4);
  const auto b = block_energy(gabor_feature(testutil::rotate90(glyph), p), 4);
  for (int k = 0; k < 4; ++k)
    EXPECT_NEAR(b[static_cast<std::size_t>((k + 1) % 4)], a[static_cast<std::size_t>(k)],
                0.05 * a[static_cast<std::size_t>(k)])
        << k;
}

TEST(GaborFeature, AlignmentPutsTheStrongestOrientationFirst) {
  const auto f = gabor_feature(testutil::rotate90(bar()));
  const auto e = block_energy(f, 4);
  for (double v : e) EXPECT_LE(v, e[0] * (1.0 + 1e-9));
}

TEST(GaborFeature, RejectsOversizeAndEmpty) {
  GaborFeatureParams p;
  p.frame = 32;
  try {
    gabor_feature(testutil::filled_rect(40, 40, 0, 0, 39, 39), p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::glyph_too_large);
  }
  EXPECT_THROW(gabor_feature(BinaryImage(8, 8, 0)), Error);
}
