#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "glyphfeat/emdc.hpp"

using namespace glyphfeat;

namespace {

std::vector<LabeledFeature> random_base(std::size_t n, std::size_t dim, int classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<LabeledFeature> out;
  for (std::size_t i = 0; i < n; ++i) {
    LabeledFeature f{"c" + std::to_string(rng() % static_cast<std::uint64_t>(classes)), {}, "s" + std::to_string(i)};
    for (std::size_t d = 0; d < dim; ++d) f.vector.push_back(u(rng));
    out.push_back(std::move(f));
  }
  return out;
}

FeatureVector random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  FeatureVector v(dim);
  for (auto& x : v) x = u(rng);
  return v;
}

// Straight re-statement of the rule for the oracle: smallest distance, then
// smallest index.
std::size_t brute_force(const FeatureVector& x, const std::vector<LabeledFeature>& base) {
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < base.size(); ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) s += (x[d] - base[i].vector[d]) * (x[d] - base[i].vector[d]);
    scored.emplace_back(s, i);
  }
  return std::min_element(scored.begin(), scored.end())->second;
}

}  // namespace

TEST(Distance, ThreeFourFive) {
  const std::vector<double> a{0, 0}, b{3, 4};
  EXPECT_EQ(euclidean_distance(a, b), 5.0);
  EXPECT_EQ(squared_distance(a, b), 25.0);
  try {
    euclidean_distance(a, std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dimension_error);
  }
}

TEST(Distance, MetricAxioms) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_vector(7, rng), y = random_vector(7, rng), z = random_vector(7, rng);
    EXPECT_EQ(euclidean_distance(x, x), 0.0);
    EXPECT_GE(euclidean_distance(x, y), 0.0);
    EXPECT_EQ(euclidean_distance(x, y), euclidean_distance(y, x));
    EXPECT_LE(euclidean_distance(x, z), euclidean_distance(x, y) + euclidean_distance(y, z) + 1e-12);
  }
}

TEST(FeatureBase, ValidatesEntries) {
  EXPECT_THROW(FeatureBase({{"a", {1, 2}, ""}, {"b", {1}, ""}}), Error);
  EXPECT_THROW(FeatureBase({{"a", {}, ""}}), Error);
  EXPECT_THROW(FeatureBase({{"", {1.0}, ""}}), Error);
  EXPECT_THROW(FeatureBase({{"a", {std::nan("")}, ""}}), Error);
  const FeatureBase ok({{"b", {1, 2}, ""}, {"a", {3, 4}, ""}, {"b", {0, 0}, ""}});
  EXPECT_EQ(ok.dim(), 2u);
  EXPECT_EQ(ok.labels(), (std::vector<std::string>{"a", "b"}));
}

TEST(Classify, PicksTheNearestEntry) {
  const FeatureBase base({{"a", {0, 0}, ""}, {"b", {10, 0}, ""}, {"c", {0, 10}, ""}});
  const std::vector<double> q{7, 1};
  const auto p = classify(q, base);
  EXPECT_EQ(p.label, "b");
  EXPECT_EQ(p.index, 1u);
  EXPECT_DOUBLE_EQ(p.distance, std::sqrt(10.0));
  EXPECT_EQ(p.runner_up_label, "a");
  EXPECT_DOUBLE_EQ(p.runner_up_distance, std::sqrt(50.0));
}

TEST(Classify, TiesGoToTheLowestIndex) {
  const FeatureBase base({{"b", {1, 0}, ""}, {"a", {-1, 0}, ""}, {"c", {0, 1}, ""}});
  const auto p = classify(std::vector<double>{0, 0}, base);
  EXPECT_EQ(p.label, "b");
  EXPECT_EQ(p.index, 0u);
  EXPECT_EQ(p.runner_up_label, "a");
  EXPECT_EQ(p.runner_up_distance, 1.0);
}

TEST(Classify, SingleClassHasNoRunnerUp) {
  const FeatureBase base({{"a", {1}, ""}, {"a", {2}, ""}});
  const auto p = classify(std::vector<double>{5}, base);
  EXPECT_EQ(p.index, 1u);
  EXPECT_TRUE(p.runner_up_label.empty());
  EXPECT_TRUE(std::isinf(p.runner_up_distance));
}

TEST(Classify, ErrorKinds) {
  try {
    classify(std::vector<double>{1}, FeatureBase{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_base);
  }
  try {
    classify(std::vector<double>{1, 2, 3}, FeatureBase({{"a", {1, 2}, ""}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dimension_error);
  }
}

TEST(Classify, MatchesBruteForceOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto entries = random_base(60, 5, 4, static_cast<std::uint64_t>(trial));
    const FeatureBase base(entries);
    for (int q = 0; q < 30; ++q) {
      const auto x = random_vector(5, rng);
      const auto p = classify(x, base);
      const auto want = brute_force(x, entries);
      EXPECT_EQ(p.index, want);
      EXPECT_EQ(p.label, entries[want].label);
    }
  }
}

TEST(Classify, ExactCopiesAreFoundWithZeroDistance) {
  const auto entries = random_base(40, 8, 5, 2);
  const FeatureBase base(entries);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto p = classify(entries[i].vector, base);
    EXPECT_EQ(p.distance, 0.0);
    EXPECT_EQ(p.label, entries[i].label);
  }
}

TEST(Classify, PermutationInvariantWithoutTies) {
  std::mt19937_64 rng(4);
  auto entries = random_base(50, 6, 3, 9);
  const FeatureBase a(entries);
  std::shuffle(entries.begin(), entries.end(), rng);
  const FeatureBase b(entries);
  for (int q = 0; q < 100; ++q) {
    const auto x = random_vector(6, rng);
    const auto pa = classify(x, a), pb = classify(x, b);
    EXPECT_EQ(pa.label, pb.label);
    EXPECT_EQ(pa.distance, pb.distance);
  }
}

TEST(Classify, AFartherEntryChangesNothing) {
  std::mt19937_64 rng(6);
  auto entries = random_base(30, 4, 3, 5);
  for (int q = 0; q < 50; ++q) {
    const auto x = random_vector(4, rng);
    const auto before = classify(x, FeatureBase(entries));
    auto grown = entries;
    FeatureVector far = x;
    far[0] += before.distance + 1.0;
    grown.push_back({"zz", far, ""});
    const auto after = classify(x, FeatureBase(grown));
    EXPECT_EQ(after.label, before.label);
    EXPECT_EQ(after.index, before.index);
  }
}

TEST(Evaluate, ConfusionAndRate) {
  const FeatureBase base({{"a", {0, 0}, ""}, {"b", {10, 10}, ""}});
  const std::vector<LabeledFeature> queries{
      {"a", {1, 1}, "q1"}, {"a", {9, 9}, "q2"}, {"b", {8, 8}, "q3"}, {"c", {0, 1}, "q4"}};
  double now = 0.0;
  const auto ev = evaluate(queries, base, [&] { return now += 0.5; });
  EXPECT_EQ(ev.classes, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_DOUBLE_EQ(ev.rate, 0.5);
  EXPECT_EQ(ev.confusion[0], (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(ev.confusion[1], (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(ev.confusion[2], (std::vector<std::size_t>{1, 0, 0}));
  // Each query sees two clock reads half a second apart.
  EXPECT_DOUBLE_EQ(ev.mean_time, 0.5);
  std::size_t total = 0;
  for (const auto& row : ev.confusion)
    for (auto v : row) total += v;
  EXPECT_EQ(total, queries.size());
  EXPECT_THROW(evaluate(std::span<const LabeledFeature>{}, base), Error);
}

TEST(Evaluate, ConfusionRowsCountTheQueriesOfEachClass) {
  const auto entries = random_base(80, 3, 4, 12);
  const FeatureBase base(entries);
  const auto queries = random_base(200, 3, 4, 13);
  const auto ev = evaluate(queries, base);
  for (std::size_t r = 0; r < ev.classes.size(); ++r) {
    std::size_t row = 0, want = 0;
    for (auto v : ev.confusion[r]) row += v;
    for (const auto& q : queries) want += q.label == ev.classes[r];
    EXPECT_EQ(row, want);
  }
  EXPECT_GE(ev.mean_time, 0.0);
}
