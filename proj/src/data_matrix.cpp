#include "cefacies/data_matrix.hpp"

#include <cmath>
#include <set>

#include "cefacies/error.hpp"

namespace cefacies {

DataMatrix::DataMatrix(std::vector<std::string> names, std::vector<std::vector<double>> columns)
    : names_(std::move(names)) {
  if (names_.empty()) throw InputError("data matrix needs at least one column");
  if (columns.size() != names_.size()) {
    throw InputError("data matrix: " + std::to_string(names_.size()) + " names for " +
                     std::to_string(columns.size()) + " columns");
  }
  std::set<std::string_view> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) throw InputError("duplicate column name '" + name + "'");
  }
  rows_ = columns.front().size();
  if (rows_ == 0) throw InputError("data matrix needs at least one row");
  values_.reserve(rows_ * names_.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows_) {
      throw InputError("column '" + names_[j] + "' has " + std::to_string(columns[j].size()) +
                       " rows, expected " + std::to_string(rows_));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!std::isfinite(columns[j][i])) {
        throw InputError("non-finite value in column '" + names_[j] + "' at row " +
                         std::to_string(i));
      }
    }
    values_.insert(values_.end(), columns[j].begin(), columns[j].end());
  }
}

DataMatrix DataMatrix::from_rows(std::vector<std::string> names,
                                 const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<double>> columns(names.size(), std::vector<double>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != names.size()) {
      throw InputError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " values, expected " + std::to_string(names.size()));
    }
    for (std::size_t j = 0; j < names.size(); ++j) columns[j][i] = rows[i][j];
  }
  return DataMatrix(std::move(names), std::move(columns));
}

std::optional<std::size_t> DataMatrix::find(std::string_view name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return j;
  }
  return std::nullopt;
}

DataMatrix DataMatrix::select_columns(std::span<const std::string> names) const {
  std::vector<std::vector<double>> columns;
  columns.reserve(names.size());
  for (const auto& name : names) {
    auto j = find(name);
    if (!j) throw InputError("unknown variable '" + name + "'");
    auto col = column(*j);
    columns.emplace_back(col.begin(), col.end());
  }
  return DataMatrix({names.begin(), names.end()}, std::move(columns));
}

DataMatrix DataMatrix::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> columns(cols(), std::vector<double>(rows.size()));
  for (std::size_t j = 0; j < cols(); ++j) {
    for (std::size_t r = 0; r < rows.size(); ++r) columns[j][r] = (*this)(rows[r], j);
  }
  return DataMatrix(names_, std::move(columns));
}

}  // namespace cefacies
