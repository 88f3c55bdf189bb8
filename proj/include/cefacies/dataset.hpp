#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cefacies/data_matrix.hpp"

namespace cefacies {

using Adjacency = std::map<int, std::set<int>>;

/// Labeled well-log table. All per-row fields have the same length and the
/// constructor rejects anything that breaks that, labels outside
/// class_names, or an asymmetric adjacency map.
class FaciesDataset {
 public:
  FaciesDataset(std::vector<std::string> wells, std::vector<double> depth, DataMatrix features,
                std::vector<int> labels, std::map<int, std::string> class_names = {},
                std::optional<Adjacency> adjacency = std::nullopt);

  std::size_t rows() const { return labels_.size(); }
  const std::vector<std::string>& wells() const { return wells_; }
  const std::vector<double>& depth() const { return depth_; }
  const DataMatrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::map<int, std::string>& class_names() const { return class_names_; }
  const std::optional<Adjacency>& adjacency() const { return adjacency_; }

  std::vector<int> classes() const;

  FaciesDataset select_rows(std::span<const std::size_t> rows) const;

  bool operator==(const FaciesDataset&) const = default;

 private:
  std::vector<std::string> wells_;
  std::vector<double> depth_;
  DataMatrix features_;
  std::vector<int> labels_;
  std::map<int, std::string> class_names_;
  std::optional<Adjacency> adjacency_;
};

/// Keep only `names`, in that order. Rejects an empty list, duplicates, and
/// unknown names.
FaciesDataset restrict_features(const FaciesDataset& data, std::span<const std::string> names);

enum class MissingPolicy { DropRow, MedianImputePerWell };

struct CsvSchema {
  std::string well_col;
  std::string depth_col;
  std::string label_col;
  std::vector<std::string> feature_cols;  // empty: every column not named above
  MissingPolicy missing = MissingPolicy::DropRow;
  std::string missing_token;  // in addition to the empty string
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::size_t cells_imputed = 0;
};

struct LoadedDataset {
  FaciesDataset data;
  LoadReport report;
};

/// Sidecar metadata: {"class_names": {"1": "name"}, "adjacency": {"1": [2]}}.
struct ClassMetadata {
  std::map<int, std::string> class_names;
  std::optional<Adjacency> adjacency;
};

ClassMetadata load_class_metadata(const std::string& path);

LoadedDataset load_csv(const std::string& path, const CsvSchema& schema,
                       const ClassMetadata& metadata = {});

/// Columns: well, depth, label, then features, using the schema's column
/// names. Doubles are written in shortest round-trip form.
void write_csv(const FaciesDataset& data, const std::string& path, const CsvSchema& schema);

}  // namespace cefacies
