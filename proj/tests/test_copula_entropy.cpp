#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cefacies/copula_entropy.hpp"
#include "cefacies/error.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cefacies;

namespace {

DataMatrix with_column(const DataMatrix& x, std::size_t j, std::vector<double> values) {
  std::vector<std::vector<double>> cols;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    if (c == j) {
      cols.push_back(values);
    } else {
      cols.emplace_back(x.column(c).begin(), x.column(c).end());
    }
  }
  return DataMatrix(x.column_names(), std::move(cols));
}

}  // namespace

TEST_CASE("independent continuous columns") {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    sum += copula_entropy(testing::gaussian_pair(2000, 0.0, 500 + seed), 3).value;
  }
  // The max-norm estimator carries about +0.047 nats of boundary bias here.
  CHECK(std::abs(sum / 10.0) < 0.07);
}

TEST_CASE("bivariate Gaussian matches -MI") {
  for (double rho : {0.3, 0.6, 0.9}) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      sum += copula_entropy(testing::gaussian_pair(2000, rho, 900 + seed), 3).value;
    }
    CAPTURE(rho);
    CHECK(std::abs(sum / 10.0 - testing::gaussian_ce(rho)) < 0.08);
  }
}

TEST_CASE("exact invariances") {
  const auto x = testing::gaussian_pair(800, 0.7, 42);
  const auto base = copula_entropy(x, 3);
  CHECK(base.k == 3);
  CHECK(base.n == 800);
  CHECK(base.d == 2);

  SUBCASE("strictly increasing transforms") {
    std::vector<double> e(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) e[i] = std::exp(x(i, 1));
    CHECK(copula_entropy(with_column(x, 1, e), 3).value == base.value);
  }
  SUBCASE("row permutation") {
    std::vector<std::size_t> perm(x.rows());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(copula_entropy(x.select_rows(perm), 3).value == base.value);
    }
  }
  SUBCASE("column order") {
    const std::vector<std::string> swapped{"b", "a"};
    CHECK(copula_entropy(x.select_columns(swapped), 3).value == base.value);
  }
}

TEST_CASE("copula entropy rejects misuse") {
  CHECK_THROWS_AS(copula_entropy(DataMatrix({"a"}, {{1.0, 2.0, 3.0}}), 1), DegenerateError);
  CHECK_THROWS_AS(copula_entropy(DataMatrix({"a", "b"}, {{1.0, 2.0, 3.0}, {3.0, 1.0, 2.0}}), 3),
                  DegenerateError);
}

TEST_CASE("CE against a discrete label") {
  const std::size_t n = 500;

  SUBCASE("feature equal to the label is strongly negative") {
    const auto labels = testing::random_classes(n, 3, 71);
    const DataMatrix f({"f"}, {{labels.begin(), labels.end()}});
    const auto est = ce_with_label(f, labels, 0, 3);
    CHECK(est.value < -0.5);
    CHECK(est.floored == n);
  }

  SUBCASE("independent feature, jittered label: near zero") {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto labels = testing::random_classes(2000, 3, 300 + seed);
      const DataMatrix f({"f"}, {testing::uniform_column(2000, 400 + seed)});
      sum += ce_with_label(f, labels, 0, 3, LabelOptions{seed}).value;
    }
    CHECK(std::abs(sum / 10.0) < 0.07);
  }

  SUBCASE("independent feature, tied label: large finite offset") {
    // Without jitter the copula sits on three lines; the estimate is finite
    // but far below zero, and no distance needs flooring.
    const auto labels = testing::random_classes(2000, 3, 5);
    const DataMatrix f({"f"}, {testing::uniform_column(2000, 6)});
    const auto est = ce_with_label(f, labels, 0, 3);
    CHECK(est.value < -3.0);
    CHECK(est.floored == 0);
  }

  SUBCASE("class-dependent feature beats an independent one on the same draw") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> gauss(0.0, 0.3);
    const auto labels = testing::random_classes(n, 3, 13);
    std::vector<double> signal(n);
    for (std::size_t i = 0; i < n; ++i) signal[i] = labels[i] + gauss(rng);
    const DataMatrix f({"signal", "noise"}, {signal, testing::uniform_column(n, 14)});
    for (auto jitter : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{3}}) {
      CHECK(ce_with_label(f, labels, 0, 3, {jitter}).value <
            ce_with_label(f, labels, 1, 3, {jitter}).value);
    }
  }

  SUBCASE("jitter is reproducible per seed") {
    const auto labels = testing::random_classes(n, 3, 21);
    const DataMatrix f({"f"}, {testing::uniform_column(n, 22)});
    CHECK(ce_with_label(f, labels, 0, 3, {7}).value == ce_with_label(f, labels, 0, 3, {7}).value);
    CHECK(ce_with_label(f, labels, 0, 3).value == ce_with_label(f, labels, 0, 3).value);
  }

  SUBCASE("errors") {
    const DataMatrix f({"f"}, {{1.0, 2.0, 3.0, 4.0, 5.0}});
    const std::vector<int> constant(5, 2);
    CHECK_THROWS_AS(ce_with_label(f, constant, 0, 1), DegenerateError);
    const std::vector<int> short_labels{1, 2};
    CHECK_THROWS_AS(ce_with_label(f, short_labels, 0, 1), InputError);
  }
}
