#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cefacies/dataset.hpp"
#include "json.hpp"

namespace cefacies {

struct EvalReport {
  std::string group;          // fold name; empty for pooled reports
  std::vector<int> classes;   // axis order of `confusion`
  std::size_t total = 0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::map<int, double> per_class_f1;
  std::vector<std::vector<std::size_t>> confusion;  // [truth][pred]
  std::optional<double> adjacent_accuracy;
  std::vector<EvalReport> fold_breakdown;

  bool operator==(const EvalReport&) const = default;
};

/// Accuracy, per-class and macro F1, and the confusion matrix over
/// `classes` (default: every code seen in truth or pred). A class with no
/// true and no predicted rows scores F1 = 0 and still counts toward the
/// macro mean. When `adjacency` is given, a prediction equal to the truth
/// or adjacent to it counts toward adjacent_accuracy.
EvalReport evaluate(std::span<const int> pred, std::span<const int> truth,
                    const Adjacency* adjacency = nullptr,
                    std::optional<std::vector<int>> classes = std::nullopt);

nlohmann::json to_json(const EvalReport& report);

}  // namespace cefacies
