#pragma once

// Uniform entry point over the four glyph feature extractors.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "glyphfeat/error.hpp"
#include "glyphfeat/fourier.hpp"
#include "glyphfeat/gabor.hpp"
#include "glyphfeat/hough.hpp"
#include "glyphfeat/raster.hpp"
#include "glyphfeat/wavelet.hpp"

namespace glyphfeat::bench {

enum class Technique { hough, fourier, wavelet, gabor };

inline constexpr std::array<Technique, 4> kAllTechniques = {Technique::hough, Technique::fourier, Technique::wavelet,
                                                            Technique::gabor};

inline std::string_view technique_name(Technique t) {
  switch (t) {
    case Technique::hough: return "hough";
    case Technique::fourier: return "fourier";
    case Technique::wavelet: return "wavelet";
    case Technique::gabor: return "gabor";
  }
  return "?";
}

inline Technique parse_technique(std::string_view name) {
  for (auto t : kAllTechniques)
    if (technique_name(t) == name) return t;
  fail(Errc::invalid_parameter, "unknown technique '" + std::string(name) + "'");
}

struct ExtractorParams {
  int harmonics = 20;
  HoughFeatureParams hough{};
  WaveletFeatureParams wavelet{};
  GaborFeatureParams gabor{};
};

inline std::vector<double> extract(Technique t, const BinaryImage& glyph, const ExtractorParams& p = {}) {
  switch (t) {
    case Technique::hough: return hough_glyph_feature(glyph, p.hough);
    case Technique::fourier: return fourier_glyph_feature(glyph, p.harmonics);
    case Technique::wavelet: return wavelet_feature(glyph, p.wavelet);
    case Technique::gabor: return gabor_feature(glyph, p.gabor);
  }
  fail(Errc::invalid_parameter, "unknown technique");
}

}  // namespace glyphfeat::bench
