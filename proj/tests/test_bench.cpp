#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "glyphfeat/bench.hpp"
#include "glyphfeat/pnm.hpp"
#include "helpers.hpp"

using namespace glyphfeat;
using namespace glyphfeat::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("glyphfeat_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

void expect_manifest_error(const fs::path& manifest, const std::string& needle) {
  try {
    load_dataset(manifest);
    FAIL() << "no error for " << needle;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::manifest_error);
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

SynthConfig small_synth() {
  SynthConfig c;
  c.classes = 3;
  c.train_per_class = 2;
  c.fresh_per_class = 2;
  c.canvas = 64;
  return c;
}

}  // namespace

TEST(Manifest, EmptyAndSingleRow) {
  const auto dir = scratch_dir("manifest");
  write_text(dir / "empty.csv", "image_path,label,writer_id,split\n");
  EXPECT_TRUE(load_dataset(dir / "empty.csv").empty());

  GrayImage img(20, 20, 255);
  for (int y = 5; y < 15; ++y)
    for (int x = 8; x < 11; ++x) img(x, y) = 0;
  pnm::write_pgm(dir / "a.pgm", img);
  write_text(dir / "one.csv", "image_path,label,writer_id,split\na.pgm,alif,w1,train\n");
  const auto d = load_dataset(dir / "one.csv");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].label, "alif");
  EXPECT_EQ(d[0].writer_id, "w1");
  EXPECT_EQ(d[0].split, Split::train);
  EXPECT_EQ(count_ink(d[0].image), 30u);
}

TEST(Manifest, ErrorsNameTheRow) {
  const auto dir = scratch_dir("manifest_bad");
  pnm::write_pgm(dir / "a.pgm", GrayImage(8, 8, 255));
  write_text(dir / "split.csv", "image_path,label,writer_id,split\na.pgm,x,w,train\na.pgm,x,w,validation\n");
  expect_manifest_error(dir / "split.csv", "row 3");
  write_text(dir / "fields.csv", "image_path,label,writer_id,split\na.pgm,x,w\n");
  expect_manifest_error(dir / "fields.csv", "row 2");
  write_text(dir / "label.csv", "image_path,label,writer_id,split\na.pgm,,w,test\n");
  expect_manifest_error(dir / "label.csv", "empty label");
  write_text(dir / "missing.csv", "image_path,label,writer_id,split\nnope.pgm,x,w,test\n");
  expect_manifest_error(dir / "missing.csv", "nope.pgm");
  write_text(dir / "header.csv", "path,label,writer,split\n");
  expect_manifest_error(dir / "header.csv", "header");
  expect_manifest_error(dir / "absent.csv", "absent.csv");
}

TEST(Manifest, WriteThenLoadRoundTrip) {
  const auto data = synth_glyphs(small_synth());
  const auto dir = scratch_dir("roundtrip");
  write_dataset(data, dir);
  const auto back = load_dataset(dir / "manifest.csv");
  ASSERT_EQ(back.size(), data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(back[i].label, data[i].label);
    EXPECT_EQ(back[i].split, data[i].split);
    EXPECT_EQ(back[i].writer_id, data[i].writer_id);
    EXPECT_EQ(back[i].image, data[i].image) << data[i].source_id;
  }
}

TEST(Synth, IsDeterministicAndIndependentPerSample) {
  const auto a = synth_glyphs(small_synth());
  const auto b = synth_glyphs(small_synth());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].image, b[i].image);

  auto more = small_synth();
  more.fresh_per_class = 5;
  const auto c = synth_glyphs(more);
  EXPECT_EQ(c[0].image, a[0].image);
  EXPECT_EQ(select(a, Split::train).size(), 6u);
  EXPECT_EQ(select(a, Split::test).size(), 12u);

  auto other = small_synth();
  other.seed = 2;
  EXPECT_NE(synth_glyphs(other)[0].image, a[0].image);
}

TEST(Synth, DefaultSizes) {
  const SynthConfig c;
  EXPECT_EQ(c.classes * c.train_per_class, 700);
  EXPECT_EQ(c.classes * (c.train_per_class + c.fresh_per_class), 1680);
  EXPECT_EQ(glyph_catalog().size(), 10u);
}

TEST(Synth, PagesCarryLineTruth) {
  PageSpec spec;
  const auto page = synth_page(spec);
  std::size_t ink = 0;
  for (int y = 0; y < page.image.height(); ++y)
    for (int x = 0; x < page.image.width(); ++x) {
      ink += page.image(x, y);
      if (page.image(x, y)) {
        EXPECT_GE(page.truth(x, y), 1);
        EXPECT_LE(page.truth(x, y), spec.lines);
      } else {
        EXPECT_EQ(page.truth(x, y), 0);
      }
    }
  EXPECT_GT(ink, 0u);
}

TEST(Transform, IdentityIsBitwiseEqual) {
  const auto img = synth_glyphs(small_synth())[0].image;
  EXPECT_EQ(apply_transform(img, {}), img);
  EXPECT_EQ(apply_transform(img, {0.0, 0, 0, 1.0}), img);
}

TEST(Transform, FullTurnIsAlmostIdentity) {
  const auto img = synth_glyphs(small_synth())[1].image;
  const auto turned = apply_transform(img, {360.0, 0, 0, 1.0});
  std::size_t same = 0;
  for (std::size_t i = 0; i < img.size(); ++i) same += img.pixels()[i] == turned.pixels()[i];
  EXPECT_GE(static_cast<double>(same), 0.99 * static_cast<double>(img.size()));
}

TEST(Transform, ShiftRoundTrip) {
  const auto img = synth_glyphs(small_synth())[2].image;
  const auto there = apply_transform(img, {0.0, 5, -5, 1.0});
  EXPECT_EQ(count_ink(there), count_ink(img));
  EXPECT_EQ(apply_transform(there, {0.0, -5, 5, 1.0}), img);
}

TEST(Transform, QuarterTurnKeepsInkCount) {
  const auto img = testutil::filled_rect(40, 40, 10, 18, 29, 21);
  const auto t = apply_transform(img, {90.0, 0, 0, 1.0});
  EXPECT_EQ(count_ink(t), count_ink(img));
  const auto box = ink_moments(t);
  EXPECT_GT(box.count, 0u);
}

TEST(Transform, ClippingIsAnError) {
  const auto img = testutil::filled_rect(20, 20, 0, 0, 19, 3);
  try {
    apply_transform(img, {0.0, 0, 30, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::transform_clips_ink);
  }
  EXPECT_THROW(apply_transform(img, {0.0, 0, 0, 8.0}), Error);
}

TEST(Transform, DescribeParseRoundTrip) {
  for (const TransformSpec& t : default_sweep()) EXPECT_EQ(parse_transform(describe(t)), t) << describe(t);
  const TransformSpec combo{30.0, -4, 7, 1.5};
  EXPECT_EQ(parse_transform(describe(combo)), combo);
  EXPECT_EQ(describe({}), "identity");
  try {
    parse_transform("wobble3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
  }
}

TEST(Experiment, RowsAreTechniqueMajor) {
  ExperimentConfig cfg;
  cfg.synth = small_synth();
  cfg.techniques = {Technique::fourier, Technique::hough};
  cfg.sweep = {TransformSpec{}, TransformSpec{90.0, 0, 0, 1.0}};
  cfg.clock = ClockKind::fixed;
  const auto data = experiment_dataset(cfg);
  const auto r = run_experiment(cfg, data);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].technique, "fourier");
  EXPECT_EQ(r.rows[0].transform, "identity");
  EXPECT_EQ(r.rows[1].transform, "rot90");
  EXPECT_EQ(r.rows[2].technique, "hough");
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.n, 12u);
    EXPECT_GE(row.rate, 0.0);
    EXPECT_LE(row.rate, 1.0);
    EXPECT_EQ(row.extract_seconds, 0.0);
  }
  ASSERT_EQ(r.confusion.size(), 4u);
  std::size_t total = 0;
  for (const auto& row : r.confusion[0].counts)
    for (auto v : row) total += v;
  EXPECT_EQ(total, 12u);
  // Train copies are in the test split, so identity matching finds them.
  EXPECT_GE(r.rows[0].rate, 0.5);
  EXPECT_EQ(r.features.size(), 2u * (6u + 12u));
}

TEST(Experiment, ZeroJitterRecognizesEverything) {
  ExperimentConfig cfg;
  cfg.synth = small_synth();
  cfg.synth.train_per_class = 1;
  cfg.synth.fresh_per_class = 1;
  cfg.synth.jitter = {0.0, 3, 0};
  cfg.synth.test_includes_train = false;
  cfg.sweep = {TransformSpec{}};
  const auto r = run_experiment(cfg, experiment_dataset(cfg));
  ASSERT_EQ(r.rows.size(), 4u);
  for (const auto& row : r.rows) EXPECT_EQ(row.rate, 1.0) << row.technique;
}

TEST(Experiment, TimingIsTheMedianOfRepetitions) {
  ExperimentConfig cfg;
  cfg.synth = small_synth();
  cfg.techniques = {Technique::hough};
  cfg.sweep = {TransformSpec{}};
  cfg.repetitions = 5;
  // Each extraction spans two reads; the durations cycle 1, 9, 2, 8, 3 ms.
  const double durations[] = {1e-3, 9e-3, 2e-3, 8e-3, 3e-3};
  double now = 0.0;
  int reads = 0;
  const Clock fake = [&] {
    const int i = reads++;
    if (i % 2 == 1) now += durations[(i / 2) % 5];
    return now;
  };
  const auto r = run_experiment(cfg, experiment_dataset(cfg), fake);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(r.rows[0].extract_seconds, 3e-3, 1e-12);
  EXPECT_NEAR(r.rows[0].classify_seconds, 3e-3, 1e-12);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
}

TEST(Experiment, EmitResultsFormat) {
  std::ostringstream out;
  const ResultRow row{"hough", "identity", 1.0, 0.00125, 0.0005, 40};
  emit_results(out, std::vector<ResultRow>{row});
  EXPECT_EQ(out.str(), "technique,transform,rate,extract_ms,classify_ms,n\nhough,identity,1.00000,1.25000,0.500000,40\n");
  try {
    emit_results(std::vector<ResultRow>{row}, "/nonexistent_dir_for_tests/results.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::io_error);
  }
}

TEST(Config, ParsesKnownKeysAndRejectsUnknown) {
  std::istringstream in(
      "# comment\nseed = 7\nclasses=4\ntechniques = hough, gabor\nsweep = identity; rot30; shift4:-2\n"
      "clock = fixed\nwavelet.family = db2\ngabor.align = false\n");
  const auto c = parse_config(in);
  EXPECT_EQ(c.synth.seed, 7u);
  EXPECT_EQ(c.synth.classes, 4);
  EXPECT_EQ(c.techniques, (std::vector<Technique>{Technique::hough, Technique::gabor}));
  ASSERT_EQ(c.sweep.size(), 3u);
  EXPECT_EQ(c.sweep[2], (TransformSpec{0.0, 4, -2, 1.0}));
  EXPECT_EQ(c.clock, ClockKind::fixed);
  EXPECT_EQ(c.params.wavelet.spec.family, WaveletFamily::db2);
  EXPECT_FALSE(c.params.gabor.align);

  for (const char* bad : {"colour = red\n", "seed = x\n", "techniques = sift\n", "clock = atomic\n", "no equals\n"}) {
    std::istringstream b(bad);
    try {
      parse_config(b);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::config_error) << bad;
    }
  }
}

TEST(FeatureCsv, RoundTrip) {
  const std::vector<LabeledFeature> rows{
      {"alif", {0.1, -2.5e-7, 3.0}, "a1"}, {"ba", {1.0 / 3.0}, "b1"}, {"ra", {7.0, 8.0, 9.0}, "r1"}};
  std::ostringstream out;
  write_feature_csv(out, rows);
  std::istringstream in(out.str());
  const auto back = read_feature_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].label, rows[i].label);
    EXPECT_EQ(back[i].source_id, rows[i].source_id);
    ASSERT_EQ(back[i].vector.size(), rows[i].vector.size());
    for (std::size_t k = 0; k < rows[i].vector.size(); ++k)
      EXPECT_NEAR(back[i].vector[k], rows[i].vector[k], 1e-8 * (1.0 + std::abs(rows[i].vector[k])));
  }
  std::istringstream bad("source_id,label,dim,v0\nx,y,2,1\n");
  EXPECT_THROW(read_feature_csv(bad), Error);
}

TEST(Techniques, NamesRoundTrip) {
  for (auto t : kAllTechniques) EXPECT_EQ(parse_technique(technique_name(t)), t);
  EXPECT_THROW(parse_technique("sift"), Error);
}
