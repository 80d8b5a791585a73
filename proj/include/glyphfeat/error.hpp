#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glyphfeat {

enum class Errc {
  invalid_input,
  invalid_parameter,
  invalid_contour,
  decomposition_too_deep,
  invalid_subbands,
  glyph_too_large,
  dimension_error,
  empty_base,
  empty_page,
  transform_clips_ink,
  manifest_error,
  config_error,
  parse_error,
  io_error,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_input: return "InvalidInput";
    case Errc::invalid_parameter: return "InvalidParameter";
    case Errc::invalid_contour: return "InvalidContour";
    case Errc::decomposition_too_deep: return "DecompositionTooDeep";
    case Errc::invalid_subbands: return "InvalidSubbands";
    case Errc::glyph_too_large: return "GlyphTooLarge";
    case Errc::dimension_error: return "DimensionError";
    case Errc::empty_base: return "EmptyBase";
    case Errc::empty_page: return "EmptyPage";
    case Errc::transform_clips_ink: return "TransformClipsInk";
    case Errc::manifest_error: return "ManifestError";
    case Errc::config_error: return "ConfigError";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the Errc kinds above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, Errc code, const char* what) {
  if (!condition) fail(code, what);
}

}  // namespace glyphfeat
