#include "cefacies/selection.hpp"

#include <algorithm>
#include <set>

#include "cefacies/copula_entropy.hpp"
#include "cefacies/error.hpp"
#include "cefacies/parallel.hpp"

namespace cefacies {

VariableRanking::VariableRanking(std::vector<RankedVariable> entries) : entries_(std::move(entries)) {
  std::set<std::string_view> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.name).second) throw InputError("variable '" + e.name + "' ranked twice");
  }
  std::sort(entries_.begin(), entries_.end(), [](const RankedVariable& a, const RankedVariable& b) {
    if (a.ce != b.ce) return a.ce < b.ce;
    return a.name < b.name;
  });
}

VariableRanking rank_variables(const FaciesDataset& data, const RankOptions& options) {
  const auto& features = data.features();
  std::vector<RankedVariable> entries(features.cols());
  parallel_for(features.cols(), options.threads, [&](std::size_t j) {
    const auto& name = features.column_names()[j];
    try {
      const auto est = ce_with_label(features, data.labels(), j, options.k,
                                     LabelOptions{options.jitter_seed});
      entries[j] = {name, est.value, est.k, est.floored};
    } catch (const DegenerateError& e) {
      throw DegenerateError("variable '" + name + "': " + e.what());
    } catch (const InputError& e) {
      throw InputError("variable '" + name + "': " + e.what());
    }
  });
  return VariableRanking(std::move(entries));
}

std::vector<std::string> select(const VariableRanking& ranking, const SelectionRule& rule) {
  std::vector<std::string> out;
  if (const auto* top = std::get_if<TopK>(&rule)) {
    if (top->m == 0 || top->m > ranking.size()) {
      throw DegenerateError("top-k of " + std::to_string(top->m) + " needs 1.." +
                            std::to_string(ranking.size()) + " variables");
    }
    for (std::size_t i = 0; i < top->m; ++i) out.push_back(ranking.entries()[i].name);
  } else {
    const double t = std::get<Threshold>(rule).t;
    for (const auto& e : ranking.entries()) {
      if (e.ce <= t) out.push_back(e.name);
    }
  }
  return out;
}

nlohmann::json to_json(const VariableRanking& ranking) {
  auto out = nlohmann::json::array();
  for (const auto& e : ranking.entries()) {
    out.push_back({{"name", e.name}, {"ce", e.ce}, {"k", e.k}, {"floored", e.floored}});
  }
  return out;
}

VariableRanking ranking_from_json(const nlohmann::json& doc) {
  std::vector<RankedVariable> entries;
  try {
    for (const auto& item : doc) {
      entries.push_back({item.at("name").get<std::string>(), item.at("ce").get<double>(),
                         item.at("k").get<int>(), item.value("floored", std::size_t{0})});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed ranking JSON: ") + e.what());
  }
  return VariableRanking(std::move(entries));
}

nlohmann::json to_json(const SelectionRule& rule) {
  if (const auto* top = std::get_if<TopK>(&rule)) return {{"mode", "top_k"}, {"m", top->m}};
  return {{"mode", "threshold"}, {"t", std::get<Threshold>(rule).t}};
}

}  // namespace cefacies
