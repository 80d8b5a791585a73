#pragma once

// Feature CSV: header "source_id,label,dim,v0,v1,...", one vector per row,
// values printed with 9 significant digits. Rows may differ in length; the
// dim column is authoritative.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "glyphfeat/bench/dataset.hpp"
#include "glyphfeat/emdc.hpp"
#include "glyphfeat/error.hpp"

namespace glyphfeat::bench {

inline void write_feature_csv(std::ostream& out, std::span<const LabeledFeature> rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.vector.size());
  out << "source_id,label,dim";
  for (std::size_t i = 0; i < width; ++i) out << ",v" << i;
  out << '\n';
  char buf[32];
  for (const auto& r : rows) {
    detail::require_csv_safe(r.source_id, "source id");
    detail::require_csv_safe(r.label, "label");
    out << r.source_id << ',' << r.label << ',' << r.vector.size();
    for (double v : r.vector) {
      std::snprintf(buf, sizeof buf, "%.9g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

inline void write_feature_csv(const std::filesystem::path& path, std::span<const LabeledFeature> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path.string());
  write_feature_csv(out, rows);
  if (!out) fail(Errc::io_error, "write failed: " + path.string());
}

inline std::vector<LabeledFeature> read_feature_csv(std::istream& in, const std::string& name = "features") {
  std::string line;
  if (!std::getline(in, line) || line.rfind("source_id,label,dim", 0) != 0)
    fail(Errc::parse_error, name + ": missing feature CSV header");
  std::vector<LabeledFeature> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_csv_line(line);
    const std::string where = name + " row " + std::to_string(row);
    if (f.size() < 3) fail(Errc::parse_error, where + ": too few fields");
    char* end = nullptr;
    const long dim = std::strtol(f[2].c_str(), &end, 10);
    if (end == f[2].c_str() || *end != '\0' || dim < 0 || static_cast<std::size_t>(dim) + 3 > f.size())
      fail(Errc::parse_error, where + ": bad dim");
    for (std::size_t i = static_cast<std::size_t>(dim) + 3; i < f.size(); ++i)
      if (!f[i].empty()) fail(Errc::parse_error, where + ": values beyond dim");
    LabeledFeature lf{f[1], {}, f[0]};
    for (long i = 0; i < dim; ++i) {
      const auto& s = f[static_cast<std::size_t>(i) + 3];
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || *end != '\0') fail(Errc::parse_error, where + ": bad value '" + s + "'");
      lf.vector.push_back(v);
    }
    out.push_back(std::move(lf));
  }
  return out;
}

inline std::vector<LabeledFeature> read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path.string());
  return read_feature_csv(in, path.string());
}

}  // namespace glyphfeat::bench
