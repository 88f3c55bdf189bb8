#include "cefacies/metrics.hpp"

#include <algorithm>
#include <set>

#include "cefacies/error.hpp"

namespace cefacies {

EvalReport evaluate(std::span<const int> pred, std::span<const int> truth,
                    const Adjacency* adjacency, std::optional<std::vector<int>> classes) {
  if (pred.size() != truth.size()) {
    throw InputError("evaluate: " + std::to_string(pred.size()) + " predictions for " +
                     std::to_string(truth.size()) + " labels");
  }
  if (truth.empty()) throw DegenerateError("evaluate: no samples");

  std::vector<int> axis;
  if (classes) {
    std::set<int> unique(classes->begin(), classes->end());
    axis.assign(unique.begin(), unique.end());
  } else {
    std::set<int> unique(truth.begin(), truth.end());
    unique.insert(pred.begin(), pred.end());
    axis.assign(unique.begin(), unique.end());
  }
  auto position = [&](int code) {
    auto it = std::lower_bound(axis.begin(), axis.end(), code);
    if (it == axis.end() || *it != code) {
      throw InputError("evaluate: class " + std::to_string(code) + " is not in the class set");
    }
    return static_cast<std::size_t>(it - axis.begin());
  };

  EvalReport r;
  r.classes = axis;
  r.total = truth.size();
  r.confusion.assign(axis.size(), std::vector<std::size_t>(axis.size(), 0));
  std::size_t adjacent_hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++r.confusion[position(truth[i])][position(pred[i])];
    if (adjacency) {
      bool hit = pred[i] == truth[i];
      if (!hit) {
        auto it = adjacency->find(truth[i]);
        hit = it != adjacency->end() && it->second.contains(pred[i]);
      }
      adjacent_hits += hit ? 1 : 0;
    }
  }

  std::size_t correct = 0;
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < axis.size(); ++c) {
    const std::size_t tp = r.confusion[c][c];
    std::size_t support = 0;
    std::size_t predicted = 0;
    for (std::size_t o = 0; o < axis.size(); ++o) {
      support += r.confusion[c][o];
      predicted += r.confusion[o][c];
    }
    correct += tp;
    // F1 = 2tp / (support + predicted); zero when both are zero.
    const double f1 = support + predicted == 0
                          ? 0.0
                          : 2.0 * static_cast<double>(tp) / static_cast<double>(support + predicted);
    r.per_class_f1[axis[c]] = f1;
    f1_sum += f1;
  }
  const double n = static_cast<double>(r.total);
  r.accuracy = static_cast<double>(correct) / n;
  r.macro_f1 = axis.empty() ? 0.0 : f1_sum / static_cast<double>(axis.size());
  if (adjacency) r.adjacent_accuracy = static_cast<double>(adjacent_hits) / n;
  return r;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json per_class = nlohmann::json::object();
  for (const auto& [code, f1] : report.per_class_f1) per_class[std::to_string(code)] = f1;
  nlohmann::json out = {
      {"classes", report.classes},
      {"total", report.total},
      {"accuracy", report.accuracy},
      {"macro_f1", report.macro_f1},
      {"per_class_f1", per_class},
      {"confusion", report.confusion},
      {"adjacent_accuracy",
       report.adjacent_accuracy ? nlohmann::json(*report.adjacent_accuracy) : nlohmann::json()},
  };
  if (!report.group.empty()) out["group"] = report.group;
  auto folds = nlohmann::json::array();
  for (const auto& f : report.fold_breakdown) folds.push_back(to_json(f));
  out["fold_breakdown"] = folds;
  return out;
}

}  // namespace cefacies
