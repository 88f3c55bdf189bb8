#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cefacies {

/// Dense table of finite reals, one named column per variable.
///
/// Storage is column-major since every estimator walks whole columns.
/// At least one row and one column are required; estimators that need
/// more (copula entropy needs n > k >= 1) check that themselves.
class DataMatrix {
 public:
  DataMatrix(std::vector<std::string> names, std::vector<std::vector<double>> columns);

  static DataMatrix from_rows(std::vector<std::string> names,
                              const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }

  double operator()(std::size_t row, std::size_t col) const { return values_[col * rows_ + row]; }

  std::span<const double> column(std::size_t col) const {
    return {values_.data() + col * rows_, rows_};
  }

  const std::vector<std::string>& column_names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  // Throws InputError naming the first unknown column.
  DataMatrix select_columns(std::span<const std::string> names) const;
  DataMatrix select_rows(std::span<const std::size_t> rows) const;

  bool operator==(const DataMatrix&) const = default;

 private:
  std::vector<std::string> names_;
  std::size_t rows_ = 0;
  std::vector<double> values_;
};

}  // namespace cefacies
