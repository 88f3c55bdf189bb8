#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cefacies/dataset.hpp"
#include "json.hpp"

namespace cefacies {

struct RankedVariable {
  std::string name;
  double ce;  // nats
  int k;
  std::size_t floored = 0;

  bool operator==(const RankedVariable&) const = default;
};

/// Variables ordered by ascending CE (strongest dependence on the label
/// first), ties broken by ascending name.
class VariableRanking {
 public:
  explicit VariableRanking(std::vector<RankedVariable> entries);

  const std::vector<RankedVariable>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool operator==(const VariableRanking&) const = default;

 private:
  std::vector<RankedVariable> entries_;
};

struct TopK {
  std::size_t m;
};
struct Threshold {
  double t;  // nats; selects ce <= t
};
using SelectionRule = std::variant<TopK, Threshold>;

struct RankOptions {
  int k = 3;
  std::optional<std::uint64_t> jitter_seed;
  unsigned threads = 1;
};

/// CE of every feature column against the label. Estimator errors are
/// rethrown with the offending column name prepended.
VariableRanking rank_variables(const FaciesDataset& data, const RankOptions& options = {});

/// Selected names in ranking order. An empty Threshold result is legal;
/// TopK larger than the ranking throws DegenerateError.
std::vector<std::string> select(const VariableRanking& ranking, const SelectionRule& rule);

/// [{"name": ..., "ce": ..., "k": ...}, ...] in ranking order.
nlohmann::json to_json(const VariableRanking& ranking);
VariableRanking ranking_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const SelectionRule& rule);

}  // namespace cefacies
