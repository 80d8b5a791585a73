// Small end-to-end run: synthesize glyphs, extract each feature, classify the
// test split against the training split, then find the lines of a page.

#include <cstdio>

#include "glyphfeat/bench.hpp"
#include "glyphfeat/glyphfeat.hpp"

int main() {
  using namespace glyphfeat;
  using namespace glyphfeat::bench;

  SynthConfig synth;
  synth.seed = 3;
  synth.train_per_class = 8;
  synth.fresh_per_class = 8;
  synth.test_includes_train = false;
  const Dataset data = synth_glyphs(synth);

  ExperimentConfig cfg;
  cfg.sweep = {parse_transform("identity"), parse_transform("rot90"), parse_transform("shift12:-7")};
  const auto result = run_experiment(cfg, data);
  for (const auto& r : result.rows)
    std::printf("%-8s %-12s rate %.3f  extract %.3f ms\n", r.technique.c_str(), r.transform.c_str(), r.rate,
                r.extract_seconds * 1e3);

  PageSpec spec;
  spec.lines = 4;
  spec.skew_deg = 2.0;
  const auto page = synth_page(spec);
  for (const auto& line : detect_text_lines(page.image))
    std::printf("line %d: theta %.0f, rho %.1f, %zu components\n", line.line_id, line.theta, line.rho,
                line.members.size());
  return 0;
}
