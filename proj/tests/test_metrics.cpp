#include <random>

#include "cefacies/error.hpp"
#include "cefacies/metrics.hpp"
#include "doctest.h"

using namespace cefacies;

namespace {

void check_accounting(const EvalReport& r) {
  std::size_t total = 0, trace = 0;
  for (std::size_t i = 0; i < r.confusion.size(); ++i) {
    for (std::size_t j = 0; j < r.confusion.size(); ++j) total += r.confusion[i][j];
    trace += r.confusion[i][i];
  }
  CHECK(total == r.total);
  CHECK(r.accuracy == static_cast<double>(trace) / static_cast<double>(total));
  CHECK(r.macro_f1 >= 0.0);
  CHECK(r.macro_f1 <= 1.0);
}

}  // namespace

TEST_CASE("hand-computed report") {
  // class 1: tp=1, support=2, predicted=1 -> F1 = 2/3
  // class 2: tp=2, support=2, predicted=3 -> F1 = 4/5
  const std::vector<int> truth{1, 1, 2, 2};
  const std::vector<int> pred{1, 2, 2, 2};
  const auto r = evaluate(pred, truth);
  CHECK(r.accuracy == 0.75);
  CHECK(std::abs(r.per_class_f1.at(1) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(r.per_class_f1.at(2) - 0.8) < 1e-15);
  CHECK(std::abs(r.macro_f1 - (2.0 / 3.0 + 0.8) / 2.0) < 1e-12);
  CHECK(std::abs(r.macro_f1 - 0.7333333333333333) < 1e-12);
  CHECK(r.confusion == std::vector<std::vector<std::size_t>>{{1, 1}, {0, 2}});
  CHECK_FALSE(r.adjacent_accuracy.has_value());
  check_accounting(r);
}

TEST_CASE("perfect prediction") {
  const std::vector<int> truth{3, 1, 2, 2, 1};
  const auto r = evaluate(truth, truth);
  CHECK(r.accuracy == 1.0);
  CHECK(r.macro_f1 == 1.0);
  CHECK(r.confusion == std::vector<std::vector<std::size_t>>{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}});
}

TEST_CASE("adjacent accuracy") {
  const Adjacency adjacency{{1, {2}}, {2, {1, 3}}, {3, {2}}};
  const std::vector<int> truth{1, 2, 3, 2};
  const std::vector<int> pred{2, 3, 2, 1};
  const auto r = evaluate(pred, truth, &adjacency);
  CHECK(r.accuracy == 0.0);
  REQUIRE(r.adjacent_accuracy.has_value());
  CHECK(*r.adjacent_accuracy == 1.0);

  const std::vector<int> far{3, 2, 1, 2};
  CHECK(*evaluate(far, truth, &adjacency).adjacent_accuracy == 0.5);
}

TEST_CASE("absent classes score zero and count toward the macro mean") {
  const std::vector<int> truth{1, 1, 2};
  const auto r = evaluate(truth, truth, nullptr, std::vector<int>{1, 2, 3});
  CHECK(r.per_class_f1.at(3) == 0.0);
  CHECK(std::abs(r.macro_f1 - 2.0 / 3.0) < 1e-15);
  CHECK(r.confusion.size() == 3);
  check_accounting(r);
}

TEST_CASE("accounting invariants on random labels") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(1, 5);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> truth(1 + rng() % 50), pred(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
      truth[i] = c(rng);
      pred[i] = c(rng);
    }
    const auto r = evaluate(pred, truth);
    check_accounting(r);
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
      std::size_t row = 0;
      for (auto v : r.confusion[i]) row += v;
      CHECK(row == static_cast<std::size_t>(std::count(truth.begin(), truth.end(), r.classes[i])));
    }
  }
}

TEST_CASE("evaluate errors and JSON field names") {
  CHECK_THROWS_AS(evaluate(std::vector<int>{1}, std::vector<int>{1, 2}), InputError);
  CHECK_THROWS_AS(evaluate(std::vector<int>{4}, std::vector<int>{1}, nullptr, std::vector<int>{1, 2}),
                  InputError);

  const auto doc = to_json(evaluate(std::vector<int>{1, 2}, std::vector<int>{1, 1}));
  for (const char* key : {"accuracy", "macro_f1", "per_class_f1", "confusion", "adjacent_accuracy",
                          "fold_breakdown"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["adjacent_accuracy"].is_null());
  CHECK(doc["per_class_f1"].contains("1"));
}
