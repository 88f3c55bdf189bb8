#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace cefacies {

/// Max-norm (L-infinity) distance.
struct ChebyshevMetric {
  static double distance(std::span<const double> a, std::span<const double> b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
  }
  // Lower bound on distance() for a point on the far side of a splitting plane.
  static double plane(double diff) { return std::abs(diff); }
};

/// Squared Euclidean distance; monotone in the true distance, so neighbor
/// order is the same.
struct SquaredEuclideanMetric {
  static double distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double diff = a[i] - b[i];
      sum += diff * diff;
    }
    return sum;
  }
  static double plane(double diff) { return diff * diff; }
};

struct Neighbor {
  double distance;
  std::size_t index;
  auto operator<=>(const Neighbor&) const = default;
};

/// Exact k-nearest-neighbor search over a fixed point set.
///
/// Results are ordered by (distance, index), so equidistant neighbors are
/// resolved toward the lower point index and queries are fully
/// deterministic.
template <class Metric>
class KdTree {
 public:
  /// `points` is row-major with `dim` coordinates per point.
  KdTree(std::vector<double> points, std::size_t dim, std::size_t leaf_size = 12)
      : points_(std::move(points)), dim_(dim), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
    if (dim_ == 0 || points_.size() % dim_ != 0) {
      throw std::invalid_argument("KdTree: point buffer is not a whole number of rows");
    }
    index_.resize(points_.size() / dim_);
    for (std::size_t i = 0; i < index_.size(); ++i) index_[i] = i;
    if (!index_.empty()) build(0, index_.size());
  }

  std::size_t size() const { return index_.size(); }
  std::size_t dim() const { return dim_; }
  std::span<const double> point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }

  /// The k nearest points to `query`, closest first. `exclude` drops one
  /// point index from consideration (used for leave-self-out queries).
  std::vector<Neighbor> nearest(std::span<const double> query, std::size_t k,
                                std::optional<std::size_t> exclude = std::nullopt) const {
    if (query.size() != dim_) throw std::invalid_argument("KdTree: query dimension mismatch");
    Heap heap;
    if (k > 0 && !nodes_.empty()) search(0, query, k, exclude, heap);
    std::vector<Neighbor> out(heap.size());
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = heap.top();
      heap.pop();
    }
    return out;
  }

 private:
  struct Node {
    std::size_t begin;
    std::size_t end;
    std::size_t axis = 0;
    double split = 0.0;
    std::int64_t left = -1;
    std::int64_t right = -1;
  };
  using Heap = std::priority_queue<Neighbor>;

  double coord(std::size_t point, std::size_t axis) const { return points_[point * dim_ + axis]; }

  std::int64_t build(std::size_t begin, std::size_t end) {
    const auto id = static_cast<std::int64_t>(nodes_.size());
    nodes_.push_back({begin, end});
    if (end - begin <= leaf_size_) return id;

    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t a = 0; a < dim_; ++a) {
      auto [lo, hi] = std::minmax_element(
          index_.begin() + begin, index_.begin() + end,
          [&](std::size_t l, std::size_t r) { return coord(l, a) < coord(r, a); });
      const double spread = coord(*hi, a) - coord(*lo, a);
      if (spread > widest) {
        widest = spread;
        axis = a;
      }
    }
    if (widest <= 0.0) return id;  // all points coincide

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [&](std::size_t l, std::size_t r) { return coord(l, axis) < coord(r, axis); });
    const double split = coord(index_[mid], axis);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    const auto left = build(begin, mid);
    const auto right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  void offer(Heap& heap, std::size_t k, Neighbor candidate) const {
    if (heap.size() < k) {
      heap.push(candidate);
    } else if (candidate < heap.top()) {
      heap.pop();
      heap.push(candidate);
    }
  }

  void search(std::int64_t id, std::span<const double> query, std::size_t k,
              std::optional<std::size_t> exclude, Heap& heap) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      for (std::size_t p = node.begin; p < node.end; ++p) {
        const std::size_t i = index_[p];
        if (exclude && *exclude == i) continue;
        offer(heap, k, {Metric::distance(query, point(i)), i});
      }
      return;
    }
    // Left holds coordinates <= split, right holds >= split.
    const double diff = query[node.axis] - node.split;
    const auto near = diff < 0.0 ? node.left : node.right;
    const auto far = diff < 0.0 ? node.right : node.left;
    search(near, query, k, exclude, heap);
    // Non-strict so equidistant candidates with lower indices stay reachable.
    if (heap.size() < k || Metric::plane(diff) <= heap.top().distance) {
      search(far, query, k, exclude, heap);
    }
  }

  std::vector<double> points_;
  std::size_t dim_;
  std::size_t leaf_size_;
  std::vector<std::size_t> index_;
  std::vector<Node> nodes_;
};

}  // namespace cefacies
