#include "cefacies/classifier.hpp"

#include <cmath>
#include <map>
#include <set>

#include "cefacies/error.hpp"

namespace cefacies {

nlohmann::json to_json(const ClassifierConfig& config) {
  return {{"k_neighbors", config.k_neighbors},
          {"weighting", config.weighting == Weighting::Uniform ? "uniform" : "inverse_distance"}};
}

KnnClassifier KnnClassifier::fit(const DataMatrix& features, std::span<const int> labels,
                                 const ClassifierConfig& config) {
  if (config.k_neighbors < 1) throw InputError("k_neighbors must be at least 1");
  if (labels.size() != features.rows()) {
    throw InputError("fit: " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(features.rows()) + " rows");
  }
  if (labels.empty()) throw DegenerateError("fit: empty training set");
  if (std::set<int>(labels.begin(), labels.end()).size() < 2) {
    throw DegenerateError("fit: training set has a single class");
  }

  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  std::vector<double> mean(d);
  std::vector<double> scale(d);
  for (std::size_t j = 0; j < d; ++j) {
    auto col = features.column(j);
    double sum = 0.0;
    for (double v : col) sum += v;
    mean[j] = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean[j]) * (v - mean[j]);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    scale[j] = sd > 0.0 ? 1.0 / sd : 0.0;
  }

  std::vector<double> points(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) points[i * d + j] = (features(i, j) - mean[j]) * scale[j];
  }
  return KnnClassifier(config, features.column_names(), std::move(mean), std::move(scale),
                       KdTree<SquaredEuclideanMetric>(std::move(points), d),
                       {labels.begin(), labels.end()});
}

std::vector<int> KnnClassifier::predict(const DataMatrix& features) const {
  if (features.column_names() != names_) {
    std::string detail;
    const auto& got = features.column_names();
    for (std::size_t j = 0; j < std::max(got.size(), names_.size()); ++j) {
      const std::string expected = j < names_.size() ? names_[j] : "<none>";
      const std::string actual = j < got.size() ? got[j] : "<none>";
      if (expected != actual) {
        detail += (detail.empty() ? "" : ", ") + std::string("position ") + std::to_string(j) +
                  ": expected '" + expected + "', got '" + actual + "'";
      }
    }
    throw InputError("predict: feature columns differ from training (" + detail + ")");
  }

  const std::size_t d = names_.size();
  const auto k = static_cast<std::size_t>(config_.k_neighbors);
  std::vector<int> out(features.rows());
  std::vector<double> query(d);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) query[j] = (features(i, j) - mean_[j]) * scale_[j];
    const auto neighbors = tree_.nearest(query, k);

    std::map<int, double> votes;
    const bool exact_match = neighbors.front().distance == 0.0;
    for (const auto& nb : neighbors) {
      double w = 1.0;
      if (config_.weighting == Weighting::InverseDistance) {
        if (exact_match) {
          if (nb.distance != 0.0) continue;
        } else {
          w = 1.0 / std::sqrt(nb.distance);
        }
      }
      votes[labels_[nb.index]] += w;
    }
    // std::map iterates codes ascending, so the first maximum is the smallest code.
    auto best = votes.begin();
    for (auto it = votes.begin(); it != votes.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    out[i] = best->first;
  }
  return out;
}

}  // namespace cefacies
