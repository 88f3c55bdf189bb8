#include "cefacies/copula_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "cefacies/digamma.hpp"
#include "cefacies/error.hpp"
#include "cefacies/kdtree.hpp"

namespace cefacies {

std::vector<double> EmpiricalCopula::row_major() const {
  std::vector<double> out(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i * cols_ + j] = (*this)(i, j);
  }
  return out;
}

std::vector<double> average_rank_scores(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (std::any_of(values.begin(), values.end(), [](double v) { return std::isnan(v); })) {
    throw std::invalid_argument("rank transform: NaN in input");
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> scores(n);
  const double scale = static_cast<double>(n);
  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo;
    while (hi + 1 < n && values[order[hi + 1]] == values[order[lo]]) ++hi;
    // 1-based positions lo+1 .. hi+1 share their mean.
    const double rank = static_cast<double>(lo + hi + 2) / 2.0;
    for (std::size_t p = lo; p <= hi; ++p) scores[order[p]] = rank / scale;
    lo = hi + 1;
  }
  return scores;
}

EmpiricalCopula rank_transform(const DataMatrix& x) {
  std::vector<double> u;
  u.reserve(x.rows() * x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto col = x.column(j);
    for (double v : col) {
      if (!std::isfinite(v)) throw std::invalid_argument("rank transform: non-finite input");
    }
    auto scores = average_rank_scores(col);
    u.insert(u.end(), scores.begin(), scores.end());
  }
  return EmpiricalCopula(x.rows(), x.cols(), std::move(u));
}

KnnEntropy knn_entropy(std::span<const double> points, std::size_t dim, int k) {
  if (dim == 0 || points.size() % dim != 0) {
    throw std::invalid_argument("knn_entropy: point buffer is not a whole number of rows");
  }
  if (k < 1) throw std::invalid_argument("knn_entropy: k must be at least 1");
  const std::size_t n = points.size() / dim;
  if (static_cast<std::size_t>(k) >= n) {
    throw DegenerateError("knn entropy: k=" + std::to_string(k) + " needs more than " +
                          std::to_string(k) + " points, got " + std::to_string(n));
  }
  for (double v : points) {
    if (!std::isfinite(v)) throw std::invalid_argument("knn_entropy: non-finite coordinate");
  }
  bool all_same = true;
  for (std::size_t i = 1; i < n && all_same; ++i) {
    all_same = std::equal(points.begin(), points.begin() + dim, points.begin() + i * dim);
  }
  if (all_same) throw DegenerateError("knn entropy: all points are identical");

  const KdTree<ChebyshevMetric> tree({points.begin(), points.end()}, dim);
  std::vector<double> log_eps(n);
  std::size_t floored = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto nn = tree.nearest(tree.point(i), static_cast<std::size_t>(k), i);
    double eps = nn.back().distance;
    if (eps <= 0.0) {
      eps = kDistanceFloor;
      ++floored;
    }
    log_eps[i] = std::log(eps);
  }
  // Summing in sorted order makes the result independent of row order.
  std::sort(log_eps.begin(), log_eps.end());
  double sum = 0.0;
  for (double v : log_eps) sum += v;

  const double d = static_cast<double>(dim);
  const double value = -digamma(k) + digamma(static_cast<double>(n)) + d * std::log(2.0) +
                       d * sum / static_cast<double>(n);
  return {value, floored};
}

CEEstimate copula_entropy(const DataMatrix& x, int k) {
  if (x.cols() < 2) {
    throw DegenerateError("copula entropy needs at least two variables, got " +
                          std::to_string(x.cols()));
  }
  if (k < 1) throw DegenerateError("copula entropy: k must be at least 1");
  if (x.rows() <= static_cast<std::size_t>(k)) {
    throw DegenerateError("copula entropy: " + std::to_string(x.rows()) +
                          " rows is too few for k=" + std::to_string(k));
  }
  const auto u = rank_transform(x);
  const auto h = knn_entropy(u.row_major(), u.cols(), k);
  return {h.value, k, x.rows(), x.cols(), h.floored};
}

CEEstimate ce_with_label(const DataMatrix& features, std::span<const int> labels,
                         std::size_t variable_index, int k, const LabelOptions& options) {
  if (labels.size() != features.rows()) {
    throw InputError("label column has " + std::to_string(labels.size()) + " rows, features have " +
                     std::to_string(features.rows()));
  }
  if (variable_index >= features.cols()) {
    throw std::out_of_range("ce_with_label: variable index " + std::to_string(variable_index));
  }
  if (std::all_of(labels.begin(), labels.end(), [&](int c) { return c == labels.front(); })) {
    throw DegenerateError("label column is constant; dependence is undefined");
  }

  std::vector<double> label(labels.begin(), labels.end());
  if (options.jitter_seed) {
    std::mt19937_64 rng(*options.jitter_seed);
    std::uniform_real_distribution<double> noise(-kLabelJitter, kLabelJitter);
    for (double& v : label) v += noise(rng);
  }
  auto col = features.column(variable_index);
  const DataMatrix pair({"x", "y"}, {{col.begin(), col.end()}, std::move(label)});
  return copula_entropy(pair, k);
}

}  // namespace cefacies
