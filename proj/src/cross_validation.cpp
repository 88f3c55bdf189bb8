#include "cefacies/cross_validation.hpp"

#include <map>

#include "cefacies/error.hpp"
#include "cefacies/parallel.hpp"

namespace cefacies {

std::vector<Fold> leave_one_group_out(std::span<const std::string> groups) {
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < groups.size(); ++i) members[groups[i]].push_back(i);
  if (members.size() < 2) {
    throw DegenerateError("grouped cross-validation needs at least two wells, found " +
                          std::to_string(members.size()));
  }
  std::vector<Fold> folds;
  for (const auto& [group, rows] : members) {
    Fold fold{group, {}, rows};
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (groups[i] != group) fold.train.push_back(i);
    }
    folds.push_back(std::move(fold));
  }
  return folds;
}

Trainer knn_trainer(const ClassifierConfig& config) {
  return [config](const DataMatrix& x, std::span<const int> y) -> std::unique_ptr<Classifier> {
    return std::make_unique<KnnClassifier>(KnnClassifier::fit(x, y, config));
  };
}

EvalReport grouped_cv(const FaciesDataset& data, const Trainer& trainer,
                      const std::optional<std::vector<std::string>>& selected,
                      const CvOptions& options) {
  const FaciesDataset view = selected ? restrict_features(data, *selected) : data;
  const auto folds = leave_one_group_out(view.wells());
  const auto classes = view.classes();
  const Adjacency* adjacency = view.adjacency() ? &*view.adjacency() : nullptr;

  std::vector<int> pooled(view.rows());
  std::vector<EvalReport> fold_reports(folds.size());
  parallel_for(folds.size(), options.threads, [&](std::size_t f) {
    const Fold& fold = folds[f];
    std::vector<int> train_labels;
    train_labels.reserve(fold.train.size());
    for (std::size_t r : fold.train) train_labels.push_back(view.labels()[r]);
    const auto model = trainer(view.features().select_rows(fold.train), train_labels);

    const auto pred = model->predict(view.features().select_rows(fold.test));
    std::vector<int> truth;
    truth.reserve(fold.test.size());
    for (std::size_t t = 0; t < fold.test.size(); ++t) {
      pooled[fold.test[t]] = pred[t];
      truth.push_back(view.labels()[fold.test[t]]);
    }
    fold_reports[f] = evaluate(pred, truth, adjacency, classes);
    fold_reports[f].group = fold.group;
  });

  EvalReport report = evaluate(pooled, view.labels(), adjacency, classes);
  report.fold_breakdown = std::move(fold_reports);
  return report;
}

EvalReport grouped_cv(const FaciesDataset& data, const ClassifierConfig& config,
                      const std::optional<std::vector<std::string>>& selected,
                      const CvOptions& options) {
  return grouped_cv(data, knn_trainer(config), selected, options);
}

}  // namespace cefacies
