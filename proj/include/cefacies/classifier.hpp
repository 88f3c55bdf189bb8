#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cefacies/data_matrix.hpp"
#include "cefacies/kdtree.hpp"
#include "json.hpp"

namespace cefacies {

/// A fitted model. Implementations must be safe to call predict() on from
/// several threads at once.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::vector<int> predict(const DataMatrix& features) const = 0;
};

enum class Weighting { Uniform, InverseDistance };

struct ClassifierConfig {
  int k_neighbors = 5;
  Weighting weighting = Weighting::InverseDistance;
};

nlohmann::json to_json(const ClassifierConfig& config);

/// k-nearest-neighbor vote in per-feature standardized space.
///
/// Features are z-scored with the training mean and population standard
/// deviation. A constant training feature standardizes to 0 everywhere so it
/// cannot influence distances. Neighbors are ordered by (distance, training
/// row), and vote ties go to the smallest class code. With inverse-distance
/// weighting, exact matches (distance 0) outvote everything else and split
/// the vote evenly among themselves. If fewer than k training rows exist,
/// all of them vote.
class KnnClassifier final : public Classifier {
 public:
  static KnnClassifier fit(const DataMatrix& features, std::span<const int> labels,
                           const ClassifierConfig& config = {});

  std::vector<int> predict(const DataMatrix& features) const override;

  const std::vector<std::string>& feature_names() const { return names_; }
  const ClassifierConfig& config() const { return config_; }

 private:
  KnnClassifier(ClassifierConfig config, std::vector<std::string> names, std::vector<double> mean,
                std::vector<double> scale, KdTree<SquaredEuclideanMetric> tree,
                std::vector<int> labels)
      : config_(config),
        names_(std::move(names)),
        mean_(std::move(mean)),
        scale_(std::move(scale)),
        tree_(std::move(tree)),
        labels_(std::move(labels)) {}

  ClassifierConfig config_;
  std::vector<std::string> names_;
  std::vector<double> mean_;
  std::vector<double> scale_;  // 1/stddev, or 0 for constant features
  KdTree<SquaredEuclideanMetric> tree_;
  std::vector<int> labels_;
};

}  // namespace cefacies
