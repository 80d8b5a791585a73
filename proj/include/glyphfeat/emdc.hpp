#pragma once

// Euclidean minimum distance classifier: 1-nearest neighbor over a labeled
// base under d(x, y) = sqrt(sum_i (x_i - y_i)^2).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "glyphfeat/error.hpp"

namespace glyphfeat {

using FeatureVector = std::vector<double>;

struct LabeledFeature {
  std::string label;
  FeatureVector vector;
  std::string source_id;
};

inline double squared_distance(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), Errc::dimension_error, "feature dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

inline double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  return std::sqrt(squared_distance(x, y));
}

/// Immutable after construction. Every entry has the same, non-zero length
/// and only finite values.
class FeatureBase {
 public:
  FeatureBase() = default;
  explicit FeatureBase(std::vector<LabeledFeature> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      require(!e.vector.empty(), Errc::invalid_input, "feature base: empty vector");
      require(!e.label.empty(), Errc::invalid_input, "feature base: empty label");
      if (dim_ == 0) dim_ = e.vector.size();
      require(e.vector.size() == dim_, Errc::dimension_error, "feature base: entries differ in length");
      require(std::all_of(e.vector.begin(), e.vector.end(), [](double v) { return std::isfinite(v); }),
              Errc::invalid_input, "feature base: non-finite value");
    }
  }

  std::span<const LabeledFeature> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t dim() const noexcept { return dim_; }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.label);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::vector<LabeledFeature> entries_;
  std::size_t dim_ = 0;
};

struct Prediction {
  std::string label;
  double distance = 0.0;
  std::size_t index = 0;  // base entry that won
  // Nearest entry carrying a different label; empty / +inf if there is none.
  std::string runner_up_label;
  double runner_up_distance = std::numeric_limits<double>::infinity();
};

/// Linear scan. Ties go to the lowest base index.
inline Prediction classify(std::span<const double> x, const FeatureBase& base) {
  if (base.empty()) fail(Errc::empty_base, "classify: feature base is empty");
  require(x.size() == base.dim(), Errc::dimension_error, "classify: query length differs from base");
  const auto entries = base.entries();
  std::size_t best = 0;
  double best_d2 = squared_distance(x, entries[0].vector);
  std::vector<double> d2(entries.size());
  d2[0] = best_d2;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    d2[i] = squared_distance(x, entries[i].vector);
    if (d2[i] < best_d2) {
      best_d2 = d2[i];
      best = i;
    }
  }
  Prediction p;
  p.label = entries[best].label;
  p.distance = std::sqrt(best_d2);
  p.index = best;
  double ru = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].label != p.label && d2[i] < ru) {
      ru = d2[i];
      p.runner_up_label = entries[i].label;
    }
  p.runner_up_distance = std::sqrt(ru);
  return p;
}

/// Seconds from an arbitrary origin; injectable so timing can be tested.
using Clock = std::function<double()>;

inline double steady_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

struct Evaluation {
  double rate = 0.0;
  std::vector<std::string> classes;              // sorted; indexes the matrix
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::vector<Prediction> predictions;
  double mean_time = 0.0;  // seconds per query, classification only
};

inline Evaluation evaluate(std::span<const LabeledFeature> queries, const FeatureBase& base,
                           const Clock& clock = steady_seconds) {
  require(!queries.empty(), Errc::invalid_input, "evaluate: no queries");
  Evaluation ev;
  ev.classes = base.labels();
  for (const auto& q : queries) ev.classes.push_back(q.label);
  std::sort(ev.classes.begin(), ev.classes.end());
  ev.classes.erase(std::unique(ev.classes.begin(), ev.classes.end()), ev.classes.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ev.classes.size(); ++i) index[ev.classes[i]] = i;
  ev.confusion.assign(ev.classes.size(), std::vector<std::size_t>(ev.classes.size(), 0));

  std::size_t correct = 0;
  double total_time = 0.0;
  for (const auto& q : queries) {
    const double t0 = clock();
    Prediction p = classify(q.vector, base);
    total_time += clock() - t0;
    ++ev.confusion[index.at(q.label)][index.at(p.label)];
    if (p.label == q.label) ++correct;
    ev.predictions.push_back(std::move(p));
  }
  ev.rate = static_cast<double>(correct) / static_cast<double>(queries.size());
  ev.mean_time = total_time / static_cast<double>(queries.size());
  return ev;
}

}  // namespace glyphfeat
