#pragma once

// Netpbm codecs: PGM (P2/P5) in, PGM (P5) and PBM (P1/P4) out.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "glyphfeat/error.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat::pnm {

namespace detail {

inline void skip_space_and_comments(std::istream& in) {
  for (;;) {
    int c = in.peek();
    if (c == EOF) return;
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

inline int read_header_int(std::istream& in, const char* field) {
  skip_space_and_comments(in);
  int value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + (in.get() - '0');
    any = true;
    if (value > (1 << 24)) fail(Errc::parse_error, std::string("PGM ") + field + " too large");
  }
  if (!any) fail(Errc::parse_error, std::string("PGM header: expected ") + field);
  return value;
}

}  // namespace detail

/// Reads a P2 or P5 graymap. Samples are rescaled to [0,255] when maxval != 255.
inline GrayImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
    fail(Errc::parse_error, "not a PGM file (expected P2 or P5)");
  const bool binary = magic[1] == '5';
  int width = detail::read_header_int(in, "width");
  int height = detail::read_header_int(in, "height");
  int maxval = detail::read_header_int(in, "maxval");
  if (width < 1 || height < 1) fail(Errc::parse_error, "PGM dimensions must be positive");
  if (maxval < 1 || maxval > 255) fail(Errc::parse_error, "PGM maxval must be in [1,255]");

  GrayImage img(width, height);
  auto px = img.pixels();
  auto scale = [maxval](int v) {
    if (v > maxval) fail(Errc::parse_error, "PGM sample exceeds maxval");
    return static_cast<std::uint8_t>(maxval == 255 ? v : (v * 255 + maxval / 2) / maxval);
  };
  if (binary) {
    if (!std::isspace(in.get())) fail(Errc::parse_error, "PGM header must end with whitespace");
    std::string buf(px.size(), '\0');
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size()) fail(Errc::parse_error, "truncated P5 raster");
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = scale(static_cast<unsigned char>(buf[i]));
  } else {
    for (auto& p : px) p = scale(detail::read_header_int(in, "sample"));
  }
  return img;
}

inline GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path.string());
  return read_pgm(in);
}

inline void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  auto px = img.pixels();
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

inline void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path.string());
  write_pgm(out, img);
  if (!out) fail(Errc::io_error, "write failed: " + path.string());
}

enum class PbmFormat { ascii, binary };

/// PBM convention: 1 = black = ink.
inline void write_pbm(std::ostream& out, const BinaryImage& img, PbmFormat fmt = PbmFormat::binary) {
  if (fmt == PbmFormat::ascii) {
    out << "P1\n" << img.width() << ' ' << img.height() << '\n';
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) out << (x ? " " : "") << (img(x, y) ? '1' : '0');
      out << '\n';
    }
    return;
  }
  out << "P4\n" << img.width() << ' ' << img.height() << '\n';
  const int row_bytes = (img.width() + 7) / 8;
  std::string row(static_cast<std::size_t>(row_bytes), '\0');
  for (int y = 0; y < img.height(); ++y) {
    std::fill(row.begin(), row.end(), '\0');
    for (int x = 0; x < img.width(); ++x)
      if (img(x, y)) row[static_cast<std::size_t>(x / 8)] |= static_cast<char>(0x80 >> (x % 8));
    out.write(row.data(), row_bytes);
  }
}

inline void write_pbm(const std::filesystem::path& path, const BinaryImage& img,
                      PbmFormat fmt = PbmFormat::binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path.string());
  write_pbm(out, img, fmt);
  if (!out) fail(Errc::io_error, "write failed: " + path.string());
}

/// Renders ink as black (0) on white (255).
inline GrayImage to_gray(const BinaryImage& img) {
  GrayImage out(img.width(), img.height(), 255);
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 0 : 255;
  return out;
}

}  // namespace glyphfeat::pnm
