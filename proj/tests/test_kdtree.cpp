#include <algorithm>
#include <random>

#include "cefacies/kdtree.hpp"
#include "doctest.h"

using namespace cefacies;

namespace {

template <class Metric>
std::vector<Neighbor> brute_nearest(const std::vector<double>& pts, std::size_t dim,
                                    std::span<const double> q, std::size_t k,
                                    std::optional<std::size_t> exclude) {
  std::vector<Neighbor> all;
  for (std::size_t i = 0; i < pts.size() / dim; ++i) {
    if (exclude && *exclude == i) continue;
    all.push_back({Metric::distance(q, {pts.data() + i * dim, dim}), i});
  }
  std::sort(all.begin(), all.end());
  all.resize(std::min(k, all.size()));
  return all;
}

// Integer lattice coordinates make exact distance ties and duplicate points common.
std::vector<double> lattice_points(std::size_t n, std::size_t dim, int span, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, span);
  std::vector<double> pts(n * dim);
  for (auto& v : pts) v = pick(rng) / static_cast<double>(span);
  return pts;
}

template <class Metric>
void check_against_brute_force(std::size_t dim, int span, std::uint64_t seed) {
  const std::size_t n = 300;
  const auto pts = lattice_points(n, dim, span, seed);
  const KdTree<Metric> tree(pts, dim, 4);
  for (std::size_t i = 0; i < n; i += 7) {
    for (std::size_t k : {1u, 3u, 10u}) {
      const auto got = tree.nearest(tree.point(i), k, i);
      const auto want = brute_nearest<Metric>(pts, dim, tree.point(i), k, i);
      REQUIRE(got == want);
    }
  }
  const auto q = lattice_points(1, dim, span, seed + 99);
  CHECK(tree.nearest(q, 5) == brute_nearest<Metric>(pts, dim, q, 5, std::nullopt));
}

}  // namespace

TEST_CASE("kd-tree matches exhaustive search including tie order") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (std::size_t dim : {1u, 2u, 3u, 8u}) {
      check_against_brute_force<ChebyshevMetric>(dim, 20, seed);
      check_against_brute_force<SquaredEuclideanMetric>(dim, 20, seed);
      check_against_brute_force<ChebyshevMetric>(dim, 1000000, seed);
    }
  }
}

TEST_CASE("kd-tree edge cases") {
  SUBCASE("k larger than the point count returns every point") {
    const KdTree<ChebyshevMetric> tree({0.0, 1.0, 2.0}, 1);
    const std::vector<double> q{0.4};
    const auto nn = tree.nearest(q, 10);
    REQUIRE(nn.size() == 3);
    CHECK(nn[0].index == 0);
    CHECK(nn[1].index == 1);
    CHECK(nn[2].index == 2);
  }
  SUBCASE("all points identical") {
    const KdTree<SquaredEuclideanMetric> tree(std::vector<double>(40, 0.5), 2);
    const std::vector<double> q{0.5, 0.5};
    const auto nn = tree.nearest(q, 3, 0);
    REQUIRE(nn.size() == 3);
    CHECK(nn[0] == Neighbor{0.0, 1});
    CHECK(nn[2] == Neighbor{0.0, 3});
  }
  SUBCASE("bad shapes are rejected") {
    CHECK_THROWS_AS(KdTree<ChebyshevMetric>({1.0, 2.0, 3.0}, 2), std::invalid_argument);
    const KdTree<ChebyshevMetric> tree({1.0, 2.0}, 2);
    const std::vector<double> q{1.0};
    CHECK_THROWS_AS(tree.nearest(q, 1), std::invalid_argument);
  }
}
