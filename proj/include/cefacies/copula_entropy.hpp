#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cefacies/data_matrix.hpp"

namespace cefacies {

// Replacement for a zero k-th neighbor distance before taking its log.
inline constexpr double kDistanceFloor = 1e-10;
// Half-width of the optional label jitter.
inline constexpr double kLabelJitter = 1e-6;

enum class TiePolicy { AverageRank };

/// Pseudo-observations of a DataMatrix: entry (i, j) is the average rank of
/// x(i, j) within column j divided by n, so every value lies in (0, 1].
class EmpiricalCopula {
 public:
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  TiePolicy tie_policy() const { return TiePolicy::AverageRank; }

  double operator()(std::size_t row, std::size_t col) const { return u_[col * rows_ + row]; }
  std::span<const double> column(std::size_t col) const { return {u_.data() + col * rows_, rows_}; }

  std::vector<double> row_major() const;

 private:
  friend EmpiricalCopula rank_transform(const DataMatrix& x);
  EmpiricalCopula(std::size_t rows, std::size_t cols, std::vector<double> u)
      : rows_(rows), cols_(cols), u_(std::move(u)) {}

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> u_;
};

// Average ranks of `values` divided by values.size(). Ties share the mean of
// the rank positions they occupy.
std::vector<double> average_rank_scores(std::span<const double> values);

EmpiricalCopula rank_transform(const DataMatrix& x);

struct KnnEntropy {
  double value;        // nats
  std::size_t floored;  // points whose k-th neighbor distance was zero
};

/// Kozachenko-Leonenko entropy under the max norm:
///   H = -psi(k) + psi(n) + d ln 2 + (d / n) sum_i ln eps_i
/// where eps_i is the max-norm distance from point i to its k-th nearest
/// other point. `points` is row-major, `dim` coordinates per point.
///
/// Throws DegenerateError when k >= n or every point coincides.
KnnEntropy knn_entropy(std::span<const double> points, std::size_t dim, int k);

struct CEEstimate {
  double value;  // nats; equals minus the mutual information
  int k;
  std::size_t n;
  std::size_t d;
  std::size_t floored = 0;
};

CEEstimate copula_entropy(const DataMatrix& x, int k);

struct LabelOptions {
  // When set, the integer label code receives seeded uniform noise in
  // [-kLabelJitter, kLabelJitter] before ranking; otherwise ties stay tied.
  std::optional<std::uint64_t> jitter_seed;
};

/// Copula entropy between one feature column and the integer label.
CEEstimate ce_with_label(const DataMatrix& features, std::span<const int> labels,
                         std::size_t variable_index, int k, const LabelOptions& options = {});

}  // namespace cefacies
