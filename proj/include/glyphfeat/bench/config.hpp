#pragma once

// Flat key=value experiment configuration. '#' starts a comment; blank lines
// are ignored; unknown keys and malformed values are ConfigErrors.
//
//   seed=7
//   techniques=hough,fourier,wavelet,gabor
//   sweep=identity;rot30;shift16:16;scale1.5
//   gabor.lambda=4

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "glyphfeat/bench/experiment.hpp"
#include "glyphfeat/error.hpp"

namespace glyphfeat::bench {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

inline long parse_long(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno != 0) fail(Errc::config_error, key + ": expected an integer, got '" + v + "'");
  return x;
}

inline double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno != 0) fail(Errc::config_error, key + ": expected a number, got '" + v + "'");
  return x;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(Errc::config_error, key + ": expected true or false, got '" + v + "'");
}

}  // namespace detail

inline void apply_config_value(ExperimentConfig& c, const std::string& key, const std::string& v) {
  using namespace detail;
  auto as_int = [&] { return static_cast<int>(parse_long(key, v)); };
  auto& g = c.params.gabor;
  auto& w = c.params.wavelet;
  const std::map<std::string, std::function<void()>> setters = {
      {"seed", [&] { c.synth.seed = static_cast<std::uint64_t>(parse_long(key, v)); }},
      {"classes", [&] { c.synth.classes = as_int(); }},
      {"train", [&] { c.synth.train_per_class = as_int(); }},
      {"fresh", [&] { c.synth.fresh_per_class = as_int(); }},
      {"canvas", [&] { c.synth.canvas = as_int(); }},
      {"point_sigma", [&] { c.synth.jitter.point_sigma = parse_double(key, v); }},
      {"stroke_width", [&] { c.synth.jitter.stroke_width = as_int(); }},
      {"width_jitter", [&] { c.synth.jitter.width_jitter = as_int(); }},
      {"test_includes_train", [&] { c.synth.test_includes_train = parse_bool(key, v); }},
      {"manifest", [&] { c.manifest = v; }},
      {"techniques",
       [&] {
         c.techniques.clear();
         for (const auto& t : split_list(v, ',')) {
           try {
             c.techniques.push_back(parse_technique(t));
           } catch (const Error& e) {
             fail(Errc::config_error, key + ": " + e.what());
           }
         }
       }},
      {"sweep",
       [&] {
         c.sweep.clear();
         for (const auto& t : split_list(v, ';')) {
           try {
             c.sweep.push_back(parse_transform(t));
           } catch (const Error& e) {
             fail(Errc::config_error, key + ": " + e.what());
           }
         }
       }},
      {"repetitions", [&] { c.repetitions = as_int(); }},
      {"clock",
       [&] {
         if (v == "steady")
           c.clock = ClockKind::steady;
         else if (v == "fixed")
           c.clock = ClockKind::fixed;
         else
           fail(Errc::config_error, key + ": expected steady or fixed");
       }},
      {"features_out", [&] { c.features_out = v; }},
      {"fourier.harmonics", [&] { c.params.harmonics = as_int(); }},
      {"hough.theta_bins", [&] { c.params.hough.theta_bins = as_int(); }},
      {"hough.rho_bins", [&] { c.params.hough.rho_bins = as_int(); }},
      {"hough.rho_extent", [&] { c.params.hough.rho_extent = parse_double(key, v); }},
      {"wavelet.family",
       [&] {
         try {
           w.spec.family = parse_family(v);
         } catch (const Error& e) {
           fail(Errc::config_error, key + ": " + e.what());
         }
       }},
      {"wavelet.levels", [&] { w.spec.levels = as_int(); }},
      {"wavelet.canvas", [&] { w.canvas = as_int(); }},
      {"wavelet.grid", [&] { w.grid = as_int(); }},
      {"wavelet.placement",
       [&] {
         if (v == "centered")
           w.placement = WaveletPlacement::centered;
         else if (v == "frame")
           w.placement = WaveletPlacement::frame;
         else
           fail(Errc::config_error, key + ": expected centered or frame");
       }},
      {"gabor.m", [&] { g.filter.orientations = as_int(); }},
      {"gabor.lambda", [&] { g.filter.wavelength = parse_double(key, v); }},
      {"gabor.sigma_x", [&] { g.filter.sigma_x = parse_double(key, v); }},
      {"gabor.sigma_y", [&] { g.filter.sigma_y = parse_double(key, v); }},
      {"gabor.radius", [&] { g.filter.kernel_radius = as_int(); }},
      {"gabor.frame", [&] { g.frame = as_int(); }},
      {"gabor.grid", [&] { g.grid = as_int(); }},
      {"gabor.align", [&] { g.align = parse_bool(key, v); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) fail(Errc::config_error, "unknown key '" + key + "'");
  it->second();
}

inline ExperimentConfig parse_config(std::istream& in, const std::string& name = "config") {
  ExperimentConfig c;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(Errc::config_error, name + " line " + std::to_string(row) + ": expected key=value");
    apply_config_value(c, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return c;
}

/// Relative manifest and features_out paths resolve against the config's
/// directory.
inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::config_error, "cannot open config " + path.string());
  ExperimentConfig c = parse_config(in, path.string());
  const auto dir = path.parent_path();
  if (!c.manifest.empty() && std::filesystem::path(c.manifest).is_relative()) c.manifest = (dir / c.manifest).string();
  if (!c.features_out.empty() && std::filesystem::path(c.features_out).is_relative())
    c.features_out = (dir / c.features_out).string();
  return c;
}

}  // namespace glyphfeat::bench
