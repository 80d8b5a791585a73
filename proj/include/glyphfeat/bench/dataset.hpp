#pragma once

// Labeled glyph datasets and the CSV manifest
//   image_path,label,writer_id,split
// with image paths relative to the manifest's directory and split in
// {train, test}.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "glyphfeat/binarize.hpp"
#include "glyphfeat/error.hpp"
#include "glyphfeat/pnm.hpp"
#include "glyphfeat/raster.hpp"

namespace glyphfeat::bench {

enum class Split { train, test };

inline std::string_view split_name(Split s) { return s == Split::train ? "train" : "test"; }

struct Sample {
  BinaryImage image;
  std::string label;
  std::string writer_id;
  Split split = Split::train;
  std::string source_id;
};

using Dataset = std::vector<Sample>;

inline std::vector<const Sample*> select(const Dataset& d, Split s) {
  std::vector<const Sample*> out;
  for (const auto& x : d)
    if (x.split == s) out.push_back(&x);
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline void require_csv_safe(const std::string& field, const char* what) {
  if (field.find_first_of(",\n\r") != std::string::npos)
    fail(Errc::invalid_input, std::string(what) + " must not contain commas or newlines: " + field);
}

}  // namespace detail

/// Rows load in file order. Images are PGM and are binarized with the
/// default method.
inline Dataset load_dataset(const std::filesystem::path& manifest, const BinarizeMethod& method = Sauvola{}) {
  std::ifstream in(manifest);
  if (!in) fail(Errc::manifest_error, "cannot open manifest " + manifest.string());
  std::string line;
  if (!std::getline(in, line)) fail(Errc::manifest_error, "manifest has no header: " + manifest.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "image_path,label,writer_id,split")
    fail(Errc::manifest_error, "manifest header must be image_path,label,writer_id,split");
  const auto dir = manifest.parent_path();
  Dataset out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_csv_line(line);
    const std::string where = manifest.string() + " row " + std::to_string(row);
    if (f.size() != 4) fail(Errc::manifest_error, where + ": expected 4 fields");
    if (f[1].empty()) fail(Errc::manifest_error, where + ": empty label");
    Sample s;
    if (f[3] == "train")
      s.split = Split::train;
    else if (f[3] == "test")
      s.split = Split::test;
    else
      fail(Errc::manifest_error, where + ": unknown split '" + f[3] + "'");
    try {
      s.image = binarize(pnm::read_pgm(dir / f[0]), method);
    } catch (const Error& e) {
      fail(Errc::manifest_error, where + ": cannot read image " + f[0] + " (" + e.what() + ")");
    }
    s.label = f[1];
    s.writer_id = f[2];
    s.source_id = f[0];
    out.push_back(std::move(s));
  }
  return out;
}

/// Writes every sample as <dir>/<source_id>.pgm plus <dir>/manifest.csv.
inline void write_dataset(const Dataset& d, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::io_error, "cannot create " + dir.string() + ": " + ec.message());
  std::ostringstream manifest;
  manifest << "image_path,label,writer_id,split\n";
  for (const auto& s : d) {
    detail::require_csv_safe(s.source_id, "source id");
    detail::require_csv_safe(s.label, "label");
    detail::require_csv_safe(s.writer_id, "writer id");
    const std::string file = s.source_id + ".pgm";
    pnm::write_pgm(dir / file, pnm::to_gray(s.image));
    manifest << file << ',' << s.label << ',' << s.writer_id << ',' << split_name(s.split) << '\n';
  }
  std::ofstream out(dir / "manifest.csv", std::ios::binary);
  if (!(out << manifest.str())) fail(Errc::io_error, "cannot write " + (dir / "manifest.csv").string());
}

}  // namespace glyphfeat::bench
