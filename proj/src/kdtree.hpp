#pragma once

// Static kd-tree over a point cloud for nearest-neighbour queries. Internal
// to the reach estimator.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "thicken/euclid.hpp"

namespace thicken::detail {

class KdTree {
 public:
  explicit KdTree(const std::vector<Point>& points) : dim_(points.empty() ? 0 : points[0].dim()) {
    coords_.reserve(points.size() * dim_);
    for (const Point& p : points) coords_.insert(coords_.end(), p.coords().begin(), p.coords().end());
    order_.resize(points.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    nodes_.reserve(points.size());
    root_ = build(0, order_.size(), 0);
  }

  std::size_t size() const noexcept { return order_.size(); }
  const double* coords(std::size_t i) const { return &coords_[i * dim_]; }

  struct Hit {
    std::size_t index = 0;
    double dist2 = std::numeric_limits<double>::infinity();
  };

  // Nearest stored point, optionally skipping one index.
  Hit nearest(std::span<const double> q, std::size_t skip = npos) const {
    Hit best;
    nearest_rec(root_, q.data(), skip, best);
    return best;
  }

  // True if some stored point within `radius` of q satisfies pred(index).
  template <class Pred>
  bool any_within(std::span<const double> q, double radius, Pred&& pred) const {
    return any_rec(root_, q.data(), radius * radius, pred);
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  struct Node {
    std::size_t point;
    int axis;
    std::ptrdiff_t left;
    std::ptrdiff_t right;
  };

  double dist2(const double* a, std::size_t i) const {
    const double* b = coords(i);
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double d = a[k] - b[k];
      s += d * d;
    }
    return s;
  }

  std::ptrdiff_t build(std::size_t lo, std::size_t hi, int depth) {
    if (lo >= hi) return -1;
    const int axis = static_cast<int>(depth % static_cast<int>(dim_));
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(lo),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::size_t a, std::size_t b) {
                       return coords(a)[axis] < coords(b)[axis];
                     });
    const auto id = static_cast<std::ptrdiff_t>(nodes_.size());
    nodes_.push_back(Node{order_[mid], axis, -1, -1});
    const auto left = build(lo, mid, depth + 1);
    const auto right = build(mid + 1, hi, depth + 1);
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
  }

  void nearest_rec(std::ptrdiff_t id, const double* q, std::size_t skip, Hit& best) const {
    if (id < 0) return;
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.point != skip) {
      const double d2 = dist2(q, n.point);
      if (d2 < best.dist2 || (d2 == best.dist2 && n.point < best.index)) best = Hit{n.point, d2};
    }
    const double diff = q[n.axis] - coords(n.point)[n.axis];
    const auto near = diff < 0 ? n.left : n.right;
    const auto far = diff < 0 ? n.right : n.left;
    nearest_rec(near, q, skip, best);
    if (diff * diff <= best.dist2) nearest_rec(far, q, skip, best);
  }

  template <class Pred>
  bool any_rec(std::ptrdiff_t id, const double* q, double r2, Pred& pred) const {
    if (id < 0) return false;
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (dist2(q, n.point) <= r2 && pred(n.point)) return true;
    const double diff = q[n.axis] - coords(n.point)[n.axis];
    const auto near = diff < 0 ? n.left : n.right;
    const auto far = diff < 0 ? n.right : n.left;
    if (any_rec(near, q, r2, pred)) return true;
    return diff * diff <= r2 && any_rec(far, q, r2, pred);
  }

  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::ptrdiff_t root_ = -1;
};

}  // namespace thicken::detail
