#include <map>
#include <mutex>
#include <set>

#include "cefacies/cross_validation.hpp"
#include "cefacies/error.hpp"
#include "cefacies/synthetic.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cefacies;

TEST_CASE("folds never mix a well into its own training set") {
  const std::vector<std::string> wells{"B", "A", "C", "A", "B", "C", "C"};
  const auto folds = leave_one_group_out(wells);
  REQUIRE(folds.size() == 3);
  CHECK(folds[0].group == "A");
  std::size_t tested = 0;
  for (const auto& fold : folds) {
    for (std::size_t r : fold.test) CHECK(wells[r] == fold.group);
    for (std::size_t r : fold.train) CHECK(wells[r] != fold.group);
    CHECK(fold.train.size() + fold.test.size() == wells.size());
    tested += fold.test.size();
  }
  CHECK(tested == wells.size());
  CHECK_THROWS_AS(leave_one_group_out(std::vector<std::string>{"A", "A"}), DegenerateError);
}

TEST_CASE("trainer only ever sees other wells") {
  const auto data = make_informative_fixture({});
  // Recording trainer: feature column inf_1 is unique per row, so the rows it
  // receives can be mapped back to their wells.
  std::map<double, std::string> well_of;
  for (std::size_t i = 0; i < data.rows(); ++i) well_of[data.features()(i, 0)] = data.wells()[i];
  std::vector<std::set<std::string>> trained_on;
  std::mutex mu;
  const Trainer inner = knn_trainer({});
  const Trainer recording = [&](const DataMatrix& x, std::span<const int> y) {
    std::set<std::string> wells;
    for (std::size_t i = 0; i < x.rows(); ++i) wells.insert(well_of.at(x(i, 0)));
    std::lock_guard lock(mu);
    trained_on.push_back(wells);
    return inner(x, y);
  };
  const auto report = grouped_cv(data, recording);
  REQUIRE(trained_on.size() == 4);
  for (const auto& fold : report.fold_breakdown) {
    int containing = 0;
    for (const auto& wells : trained_on) containing += wells.contains(fold.group) ? 1 : 0;
    CHECK(containing == 3);  // every training set except its own fold's
  }
}

TEST_CASE("perfectly separable wells") {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> wells;
  std::vector<int> labels;
  for (const char* w : {"A", "B"}) {
    for (int c = 1; c <= 3; ++c) {
      for (int r = 0; r < 5; ++r) {
        rows.push_back({10.0 * c + 0.1 * r, -5.0 * c});
        wells.emplace_back(w);
        labels.push_back(c);
      }
    }
  }
  const FaciesDataset data(wells, std::vector<double>(wells.size(), 0.0),
                           DataMatrix::from_rows({"x", "y"}, rows), labels);
  const auto r = grouped_cv(data, ClassifierConfig{});
  CHECK(r.accuracy == 1.0);
  CHECK(r.fold_breakdown.size() == 2);
  for (const auto& f : r.fold_breakdown) CHECK(f.accuracy == 1.0);
}

TEST_CASE("labels independent of features score near chance") {
  const std::size_t n = 2000;
  const auto labels = testing::random_classes(n, 3, 31);
  std::vector<std::string> wells(n);
  for (std::size_t i = 0; i < n; ++i) wells[i] = "W" + std::to_string(i % 5);
  const FaciesDataset data(wells, std::vector<double>(n, 0.0),
                           DataMatrix({"u", "v"}, {testing::uniform_column(n, 32),
                                                   testing::uniform_column(n, 33)}),
                           labels);
  const auto r = grouped_cv(data, ClassifierConfig{});
  CHECK(std::abs(r.accuracy - 1.0 / 3.0) < 0.1);
}

TEST_CASE("restriction to every variable is the identity") {
  const auto data = make_informative_fixture({});
  const auto all = grouped_cv(data, ClassifierConfig{});
  CHECK(grouped_cv(data, ClassifierConfig{}, data.features().column_names()) == all);
  CHECK(grouped_cv(data, ClassifierConfig{}, std::nullopt, {4}) == all);
  std::size_t fold_total = 0;
  for (const auto& f : all.fold_breakdown) fold_total += f.total;
  CHECK(fold_total == all.total);
}

TEST_CASE("single well is rejected") {
  const FaciesDataset data({"A", "A", "A"}, {0, 1, 2}, DataMatrix({"x"}, {{1.0, 2.0, 3.0}}),
                           {1, 2, 1});
  CHECK_THROWS_AS(grouped_cv(data, ClassifierConfig{}), DegenerateError);
}
