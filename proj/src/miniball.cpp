// Smallest enclosing ball by Welzl's recursion with the move-to-front
// heuristic. The ball through a support set is the circumsphere inside the
// set's affine hull.

#include <algorithm>
#include <cmath>
#include <list>
#include <vector>

#include "thicken/complexes.hpp"
#include "thicken/errors.hpp"

namespace thicken {

namespace {

constexpr std::size_t kMaxBallDim = 10;

struct WorkBall {
  std::vector<double> center;
  double radius2 = -1.0;  // negative: empty ball
};

class Welzl {
 public:
  Welzl(std::span<const Point> points) : points_(points), dim_(points.front().dim()) {
    for (std::size_t i = 0; i < points.size(); ++i) order_.push_back(i);
  }

  WorkBall solve() {
    support_.clear();
    return mtf(order_.end());
  }

 private:
  bool outside(const WorkBall& ball, std::size_t i) const {
    if (ball.radius2 < 0.0) return true;
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double d = points_[i][k] - ball.center[k];
      s += d * d;
    }
    // Relative slack absorbs rounding of the circumsphere solve.
    return s > ball.radius2 * (1.0 + 1e-13) + 1e-300;
  }

  // Circumsphere of the support points within their affine hull. Affinely
  // dependent directions get coefficient zero.
  WorkBall circumsphere() const {
    WorkBall ball;
    if (support_.empty()) return ball;
    const Point& q0 = points_[support_[0]];
    ball.center.assign(q0.coords().begin(), q0.coords().end());
    const std::size_t m = support_.size() - 1;
    if (m == 0) {
      ball.radius2 = 0.0;
      return ball;
    }
    std::vector<std::vector<double>> v(m, std::vector<double>(dim_));
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) v[j][k] = points_[support_[j + 1]][k] - q0[k];
    }
    // 2 <v_j, v_l> alpha_l = |v_j|^2
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
    double scale = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t l = 0; l < m; ++l) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) s += v[j][k] * v[l][k];
        a[j][l] = 2.0 * s;
      }
      a[j][m] = 0.5 * a[j][j];
      scale = std::max(scale, std::abs(a[j][j]));
    }
    std::vector<double> alpha(m, 0.0);
    std::vector<bool> used(m, false);
    std::vector<std::size_t> pivot_col(m, m);
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t best = m;
      double best_abs = 1e-12 * scale;
      for (std::size_t row = 0; row < m; ++row) {
        if (!used[row] && std::abs(a[row][col]) > best_abs) {
          best_abs = std::abs(a[row][col]);
          best = row;
        }
      }
      if (best == m) continue;
      used[best] = true;
      pivot_col[best] = col;
      for (std::size_t row = 0; row < m; ++row) {
        if (row == best) continue;
        const double f = a[row][col] / a[best][col];
        if (f == 0.0) continue;
        for (std::size_t c = col; c <= m; ++c) a[row][c] -= f * a[best][c];
      }
    }
    for (std::size_t row = 0; row < m; ++row) {
      if (used[row]) alpha[pivot_col[row]] = a[row][m] / a[row][pivot_col[row]];
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) ball.center[k] += alpha[j] * v[j][k];
    }
    double r2 = 0.0;
    for (std::size_t idx : support_) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double d = points_[idx][k] - ball.center[k];
        s += d * d;
      }
      r2 = std::max(r2, s);
    }
    ball.radius2 = r2;
    return ball;
  }

  // Ball of the points before `end` in the current order with the support
  // on its boundary.
  WorkBall mtf(std::list<std::size_t>::iterator end) {
    WorkBall ball = circumsphere();
    if (support_.size() == dim_ + 1) return ball;
    for (auto it = order_.begin(); it != end;) {
      const std::size_t i = *it;
      auto next = std::next(it);
      if (outside(ball, i)) {
        support_.push_back(i);
        ball = mtf(it);
        support_.pop_back();
        if (it != order_.begin()) order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
    return ball;
  }

  std::span<const Point> points_;
  std::size_t dim_;
  std::list<std::size_t> order_;
  std::vector<std::size_t> support_;
};

}  // namespace

MinBallResult min_enclosing_ball(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("min_enclosing_ball: empty input");
  const std::size_t dim = points.front().dim();
  for (const Point& p : points) {
    if (p.dim() != dim) throw DimensionMismatch("min_enclosing_ball: mixed dimensions");
  }
  if (dim > kMaxBallDim) throw SizeLimitExceeded("min_enclosing_ball: ambient dimension above 10");

  Welzl solver(points);
  WorkBall ball = solver.solve();
  Point center(std::move(ball.center));
  double radius = 0.0;
  for (const Point& p : points) radius = std::max(radius, distance(center, p));
  return {std::move(center), radius};
}

}  // namespace thicken
