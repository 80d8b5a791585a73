// glyphfeat command line: synthetic data, feature extraction, classification,
// experiments and text-line detection.
//
// Exit codes: 0 success, 1 other failure, 2 config/manifest/usage error,
// 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "glyphfeat/bench.hpp"
#include "glyphfeat/glyphfeat.hpp"

namespace gf = glyphfeat;
namespace gb = glyphfeat::bench;

namespace {

int exit_code(gf::Errc e) {
  switch (e) {
    case gf::Errc::config_error:
    case gf::Errc::manifest_error: return 2;
    case gf::Errc::io_error: return 3;
    default: return 1;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) gf::fail(gf::Errc::io_error, "cannot write " + path);
}

struct ExtractOptions {
  std::string technique = "gabor";
  std::string in, out, split = "all";
  gb::ExtractorParams params;
  std::string family = "db3", placement = "centered";
  std::string dump_chain;
  bool unit_lambda = false, no_align = false;
};

void add_extractor_flags(CLI::App* cmd, ExtractOptions& o) {
  cmd->add_option("--harmonics", o.params.harmonics, "Fourier: number of harmonics")->capture_default_str();
  cmd->add_option("--theta-bins", o.params.hough.theta_bins, "Hough: theta histogram bins")->capture_default_str();
  cmd->add_option("--rho-bins", o.params.hough.rho_bins, "Hough: |rho| histogram bins")->capture_default_str();
  cmd->add_option("--rho-extent", o.params.hough.rho_extent, "Hough: |rho| histogram range, pixels")
      ->capture_default_str();
  cmd->add_option("--family", o.family, "wavelet: haar, db2, db3, db4, sym4, sym5")->capture_default_str();
  cmd->add_option("--levels", o.params.wavelet.spec.levels, "wavelet: decomposition levels")->capture_default_str();
  cmd->add_option("--canvas", o.params.wavelet.canvas, "wavelet: canvas size, pixels")->capture_default_str();
  cmd->add_option("--placement", o.placement, "wavelet: centered (by gravity center) or frame (as drawn)")
      ->capture_default_str();
  cmd->add_option("--m", o.params.gabor.filter.orientations, "Gabor: number of orientations")->capture_default_str();
  cmd->add_option("--lambda", o.params.gabor.filter.wavelength,
                  "Gabor: wavelength in pixels per cycle. Defaults to 4; lambda = 1 samples the carrier once per "
                  "cycle and aliases to a constant along theta = 0")
      ->capture_default_str();
  cmd->add_option("--sigma-x", o.params.gabor.filter.sigma_x, "Gabor: envelope sigma along x'")->capture_default_str();
  cmd->add_option("--sigma-y", o.params.gabor.filter.sigma_y, "Gabor: envelope sigma along y'")->capture_default_str();
  cmd->add_option("--radius", o.params.gabor.filter.kernel_radius, "Gabor: kernel radius")->capture_default_str();
  cmd->add_option("--frame", o.params.gabor.frame, "Gabor: frame size N")->capture_default_str();
  cmd->add_option("--grid", o.params.gabor.grid, "Gabor: cells per frame side")->capture_default_str();
  cmd->add_flag("--unit-lambda", o.unit_lambda, "Gabor: use lambda = 1");
  cmd->add_flag("--no-align", o.no_align, "Gabor: keep orientation blocks in filter order");
}

void finish_extractor_params(ExtractOptions& o) {
  o.params.wavelet.spec.family = gf::parse_family(o.family);
  if (o.placement == "centered")
    o.params.wavelet.placement = gf::WaveletPlacement::centered;
  else if (o.placement == "frame")
    o.params.wavelet.placement = gf::WaveletPlacement::frame;
  else
    gf::fail(gf::Errc::invalid_parameter, "--placement must be centered or frame");
  if (o.unit_lambda) o.params.gabor.filter.wavelength = 1.0;
  if (o.no_align) o.params.gabor.align = false;
}

int run_synth(std::uint64_t seed, int classes, int train, int test, int canvas, bool no_copies, const std::string& out) {
  gb::SynthConfig cfg;
  cfg.seed = seed;
  cfg.classes = classes;
  cfg.train_per_class = train;
  cfg.fresh_per_class = test;
  cfg.canvas = canvas;
  cfg.test_includes_train = !no_copies;
  const auto data = gb::synth_glyphs(cfg);
  gb::write_dataset(data, out);
  std::printf("wrote %zu images and manifest.csv to %s\n", data.size(), out.c_str());
  return 0;
}

int run_extract(ExtractOptions& o) {
  finish_extractor_params(o);
  const auto tech = gb::parse_technique(o.technique);
  const auto data = gb::load_dataset(o.in);
  std::vector<gf::LabeledFeature> rows;
  std::ostringstream chains;
  for (const auto& s : data) {
    if (o.split != "all" && o.split != gb::split_name(s.split)) continue;
    rows.push_back({s.label, gb::extract(tech, s.image, o.params), s.source_id});
    if (!o.dump_chain.empty()) {
      // Outer contour of the largest component: source_id,start_x,start_y,codes...
      const auto comps = gf::connected_components(s.image);
      if (comps.empty()) continue;
      const auto cc = gf::to_chain_code(gf::trace_contour(s.image, comps[gf::largest_component(comps)]));
      chains << s.source_id << ',' << cc.start.x << ',' << cc.start.y;
      for (auto c : cc.codes) chains << ',' << static_cast<int>(c);
      chains << '\n';
    }
  }
  gb::write_feature_csv(o.out, rows);
  if (!o.dump_chain.empty()) write_text(o.dump_chain, chains.str());
  std::printf("wrote %zu %s feature vectors to %s\n", rows.size(), o.technique.c_str(), o.out.c_str());
  return 0;
}

int run_classify(const std::string& base_path, const std::string& query_path, const std::string& out) {
  const gf::FeatureBase base(gb::read_feature_csv(base_path));
  const auto queries = gb::read_feature_csv(query_path);
  const auto ev = gf::evaluate(queries, base);
  std::ostringstream text;
  text << "source_id,label,predicted,distance,runner_up,runner_up_distance\n";
  char buf[64];
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& p = ev.predictions[i];
    text << queries[i].source_id << ',' << queries[i].label << ',' << p.label << ',';
    std::snprintf(buf, sizeof buf, "%.9g", p.distance);
    text << buf << ',' << p.runner_up_label << ',';
    std::snprintf(buf, sizeof buf, "%.9g", p.runner_up_distance);
    text << buf << '\n';
  }
  write_text(out, text.str());
  std::printf("recognition rate %.6f over %zu queries\n", ev.rate, queries.size());
  return 0;
}

int run_bench(const std::string& config, const std::string& out, const std::string& features_out) {
  gb::ExperimentConfig cfg = gb::load_config(config);
  if (!features_out.empty()) cfg.features_out = features_out;
  const auto data = gb::experiment_dataset(cfg);
  const auto result = gb::run_experiment(cfg, data);
  gb::emit_results(result.rows, out);
  if (!cfg.features_out.empty()) gb::write_feature_csv(cfg.features_out, result.features);
  std::printf("wrote %zu result rows to %s\n", result.rows.size(), out.c_str());
  return 0;
}

int run_lines(const std::string& in, const std::string& out, const std::string& method, const std::string& pbm) {
  gf::BinarizeMethod m = gf::Sauvola{};
  if (method == "otsu")
    m = gf::Otsu{};
  else if (method != "sauvola")
    gf::fail(gf::Errc::invalid_parameter, "--method must be sauvola or otsu");
  const auto page = gf::binarize(gf::pnm::read_pgm(in), m);
  if (!pbm.empty()) gf::pnm::write_pbm(pbm, page);
  const auto lines = gf::detect_text_lines(page);
  std::ostringstream text;
  text << "line_id,rho,theta_deg,members\n";
  char buf[96];
  for (const auto& l : lines) {
    std::snprintf(buf, sizeof buf, "%d,%.6g,%.6g,", l.line_id, l.rho, l.theta);
    text << buf;
    for (std::size_t i = 0; i < l.members.size(); ++i) text << (i ? ";" : "") << l.members[i];
    text << '\n';
  }
  write_text(out, text.str());
  std::printf("%zu text lines\n", lines.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glyph feature extraction and comparison toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int classes = 10, train = 70, test = 98, canvas = 128;
  bool no_copies = false;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write a seeded synthetic glyph set (PGMs + manifest.csv)");
  synth->add_option("--seed", seed)->capture_default_str();
  synth->add_option("--classes", classes)->capture_default_str();
  synth->add_option("--train", train, "Training glyphs per class")->capture_default_str();
  synth->add_option("--test", test, "Fresh test glyphs per class")->capture_default_str();
  synth->add_option("--canvas", canvas)->capture_default_str();
  synth->add_flag("--no-train-copies", no_copies, "Leave training glyphs out of the test split");
  synth->add_option("--out", synth_out, "Output directory")->required();

  ExtractOptions ex;
  auto* extract = app.add_subcommand("extract", "Extract one feature vector per manifest row");
  extract->add_option("--technique", ex.technique, "hough, fourier, wavelet or gabor")->capture_default_str();
  extract->add_option("--in", ex.in, "Manifest CSV")->required();
  extract->add_option("--out", ex.out, "Feature CSV")->required();
  extract->add_option("--split", ex.split, "train, test or all")->capture_default_str();
  extract->add_option("--dump-chain", ex.dump_chain, "Also write each glyph's Freeman chain code to this file");
  add_extractor_flags(extract, ex);

  std::string base_path, query_path, pred_out;
  auto* classify = app.add_subcommand("classify", "Nearest-neighbor classification of feature CSVs");
  classify->add_option("--base", base_path)->required();
  classify->add_option("--queries", query_path)->required();
  classify->add_option("--out", pred_out)->required();

  std::string config, bench_out, features_out;
  auto* bench = app.add_subcommand("bench", "Run the comparative experiment");
  bench->add_option("--config", config, "key=value config file")->required();
  bench->add_option("--out", bench_out, "Results CSV")->required();
  bench->add_option("--features-out", features_out, "Also write the extracted features");

  std::string lines_in, lines_out, method = "sauvola", pbm;
  auto* lines = app.add_subcommand("lines", "Detect text lines on a PGM page");
  lines->add_option("--in", lines_in)->required();
  lines->add_option("--out", lines_out)->required();
  lines->add_option("--method", method, "sauvola or otsu")->capture_default_str();
  lines->add_option("--binarized", pbm, "Also write the binarized page as PBM");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*synth) return run_synth(seed, classes, train, test, canvas, no_copies, synth_out);
    if (*extract) return run_extract(ex);
    if (*classify) return run_classify(base_path, query_path, pred_out);
    if (*bench) return run_bench(config, bench_out, features_out);
    if (*lines) return run_lines(lines_in, lines_out, method, pbm);
  } catch (const gf::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
