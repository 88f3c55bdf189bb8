#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cefacies/classifier.hpp"
#include "cefacies/dataset.hpp"
#include "cefacies/metrics.hpp"

namespace cefacies {

struct Fold {
  std::string group;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// One fold per distinct well (sorted by well id): that well's rows are the
/// test set and every other row trains. Throws DegenerateError for fewer
/// than two wells.
std::vector<Fold> leave_one_group_out(std::span<const std::string> groups);

using Trainer =
    std::function<std::unique_ptr<Classifier>(const DataMatrix&, std::span<const int>)>;

Trainer knn_trainer(const ClassifierConfig& config);

struct CvOptions {
  unsigned threads = 1;
};

/// Leave-one-well-out evaluation. The pooled report scores every row's
/// out-of-fold prediction; fold_breakdown holds one report per well. When
/// `selected` is given, features are restricted to it first.
EvalReport grouped_cv(const FaciesDataset& data, const Trainer& trainer,
                      const std::optional<std::vector<std::string>>& selected = std::nullopt,
                      const CvOptions& options = {});

EvalReport grouped_cv(const FaciesDataset& data, const ClassifierConfig& config,
                      const std::optional<std::vector<std::string>>& selected = std::nullopt,
                      const CvOptions& options = {});

}  // namespace cefacies
