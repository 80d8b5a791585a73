#pragma once

// Comparative experiment: per technique, a base built from the training
// split at identity, then every test glyph transformed by each sweep entry,
// extracted and classified. Rows come out technique-major in sweep order.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "glyphfeat/bench/dataset.hpp"
#include "glyphfeat/bench/extractors.hpp"
#include "glyphfeat/bench/feature_csv.hpp"
#include "glyphfeat/bench/synth.hpp"
#include "glyphfeat/bench/transform.hpp"
#include "glyphfeat/emdc.hpp"
#include "glyphfeat/error.hpp"

namespace glyphfeat::bench {

enum class ClockKind { steady, fixed };

inline std::vector<TransformSpec> default_sweep() {
  std::vector<TransformSpec> s;
  for (const char* d : {"identity", "rot15", "rot30", "rot45", "rot90", "shift16:16", "scale0.5", "scale1.5"})
    s.push_back(parse_transform(d));
  return s;
}

struct ExperimentConfig {
  SynthConfig synth{};
  std::string manifest;  // when set, the dataset is loaded instead of synthesized
  std::vector<Technique> techniques{kAllTechniques.begin(), kAllTechniques.end()};
  std::vector<TransformSpec> sweep = default_sweep();
  ExtractorParams params = [] {
    ExtractorParams p;
    p.wavelet.placement = WaveletPlacement::frame;
    return p;
  }();
  int repetitions = 1;
  ClockKind clock = ClockKind::steady;
  std::string features_out;
};

struct ResultRow {
  std::string technique;
  std::string transform;
  double rate = 0.0;
  double extract_seconds = 0.0;   // mean over queries of the per-query median
  double classify_seconds = 0.0;  // same, classification only
  std::size_t n = 0;
};

struct ConfusionTable {
  std::vector<std::string> classes;
  std::vector<std::vector<std::size_t>> counts;  // [true][predicted]
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<ConfusionTable> confusion;  // parallel to rows
  std::vector<LabeledFeature> features;   // base and identity queries, source ids "<technique>:<split>:<id>"
};

inline double median(std::vector<double> v) {
  require(!v.empty(), Errc::invalid_input, "median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline Clock make_clock(ClockKind k) {
  if (k == ClockKind::fixed) return [] { return 0.0; };
  return steady_seconds;
}

inline Dataset experiment_dataset(const ExperimentConfig& cfg) {
  return cfg.manifest.empty() ? synth_glyphs(cfg.synth) : load_dataset(cfg.manifest);
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const Dataset& data, const Clock& clock) {
  require(cfg.repetitions >= 1, Errc::config_error, "repetitions must be >= 1");
  require(!cfg.techniques.empty() && !cfg.sweep.empty(), Errc::config_error, "nothing to run");
  const auto train = select(data, Split::train);
  const auto test = select(data, Split::test);
  require(!train.empty() && !test.empty(), Errc::invalid_input, "experiment needs both train and test samples");

  ExperimentResult result;
  for (Technique tech : cfg.techniques) {
    const std::string tname(technique_name(tech));
    std::vector<LabeledFeature> base_rows;
    for (const Sample* s : train) base_rows.push_back({s->label, extract(tech, s->image, cfg.params), s->source_id});
    for (const auto& r : base_rows) result.features.push_back({r.label, r.vector, tname + ":train:" + r.source_id});
    const FeatureBase base(std::move(base_rows));

    for (const TransformSpec& t : cfg.sweep) {
      ResultRow row{tname, describe(t), 0.0, 0.0, 0.0, test.size()};
      ConfusionTable table;
      table.classes = base.labels();
      for (const Sample* s : test) table.classes.push_back(s->label);
      std::sort(table.classes.begin(), table.classes.end());
      table.classes.erase(std::unique(table.classes.begin(), table.classes.end()), table.classes.end());
      table.counts.assign(table.classes.size(), std::vector<std::size_t>(table.classes.size(), 0));
      auto class_index = [&](const std::string& l) {
        return static_cast<std::size_t>(
            std::lower_bound(table.classes.begin(), table.classes.end(), l) - table.classes.begin());
      };

      std::size_t correct = 0;
      for (const Sample* s : test) {
        BinaryImage img;
        try {
          img = apply_transform(s->image, t);
        } catch (const Error& e) {
          fail(e.code(), s->source_id + ": " + e.what());
        }
        std::vector<double> feat, ext_times, cls_times;
        for (int r = 0; r < cfg.repetitions; ++r) {
          const double t0 = clock();
          feat = extract(tech, img, cfg.params);
          ext_times.push_back(clock() - t0);
        }
        Prediction pred;
        for (int r = 0; r < cfg.repetitions; ++r) {
          const double t0 = clock();
          try {
            pred = classify(feat, base);
          } catch (const Error& e) {
            if (e.code() == Errc::dimension_error)
              fail(Errc::config_error, "feature length of " + s->source_id + " differs from the base");
            throw;
          }
          cls_times.push_back(clock() - t0);
        }
        row.extract_seconds += median(ext_times);
        row.classify_seconds += median(cls_times);
        ++table.counts[class_index(s->label)][class_index(pred.label)];
        if (pred.label == s->label) ++correct;
        if (t.is_identity()) result.features.push_back({s->label, feat, tname + ":test:" + s->source_id});
      }
      const auto n = static_cast<double>(test.size());
      row.rate = static_cast<double>(correct) / n;
      row.extract_seconds /= n;
      row.classify_seconds /= n;
      result.rows.push_back(row);
      result.confusion.push_back(std::move(table));
    }
  }
  return result;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const Dataset& data) {
  return run_experiment(cfg, data, make_clock(cfg.clock));
}

inline void emit_results(std::ostream& out, std::span<const ResultRow> rows) {
  require(!rows.empty(), Errc::invalid_input, "emit_results: no rows");
  out << "technique,transform,rate,extract_ms,classify_ms,n\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%#.6g,%#.6g,%#.6g,%zu\n", r.technique.c_str(), r.transform.c_str(), r.rate,
                  r.extract_seconds * 1e3, r.classify_seconds * 1e3, r.n);
    out << buf;
  }
}

inline void emit_results(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  std::ostringstream text;
  emit_results(text, rows);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text.str()) || !out.flush()) fail(Errc::io_error, "cannot write " + path.string());
}

}  // namespace glyphfeat::bench
