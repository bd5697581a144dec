#pragma once

// Brute-force reference computations, written independently of the library
// algorithms they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "thicken/euclid.hpp"
#include "thicken/shapes.hpp"

namespace oracle {

using thicken::Point;

inline std::array<double, 3> lift(const Point& p) {
  std::array<double, 3> v{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < p.dim(); ++i) v[i] = p[i];
  return v;
}

inline std::array<double, 3> sub(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double det3(const std::array<double, 3>& a, const std::array<double, 3>& b, const std::array<double, 3>& c) {
  return dot3(a, cross(b, c));
}

struct Ball3 {
  std::array<double, 3> center;
  double radius;
};

// Smallest ball through 1..4 points of R^3 (circumball in their affine hull),
// by closed forms. Empty for degenerate configurations.
inline std::optional<Ball3> circumball(const std::vector<std::array<double, 3>>& q) {
  if (q.size() == 1) return Ball3{q[0], 0.0};
  if (q.size() == 2) {
    const std::array<double, 3> c{(q[0][0] + q[1][0]) / 2, (q[0][1] + q[1][1]) / 2, (q[0][2] + q[1][2]) / 2};
    return Ball3{c, std::sqrt(dot3(sub(q[0], c), sub(q[0], c)))};
  }
  if (q.size() == 3) {
    const auto a = sub(q[1], q[0]);
    const auto b = sub(q[2], q[0]);
    const auto n = cross(a, b);
    const double nn = dot3(n, n);
    if (nn < 1e-24 * dot3(a, a) * dot3(b, b)) return std::nullopt;
    // c - q0 = (|a|^2 (b x n) + |b|^2 (n x a)) / (2 |n|^2)
    const auto t1 = cross(b, n);
    const auto t2 = cross(n, a);
    std::array<double, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = q[0][i] + (dot3(a, a) * t1[i] + dot3(b, b) * t2[i]) / (2 * nn);
    return Ball3{c, std::sqrt(dot3(sub(q[0], c), sub(q[0], c)))};
  }
  const auto a = sub(q[1], q[0]);
  const auto b = sub(q[2], q[0]);
  const auto d = sub(q[3], q[0]);
  const double det = det3(a, b, d);
  const double scale = std::sqrt(dot3(a, a) * dot3(b, b) * dot3(d, d));
  if (std::abs(det) < 1e-12 * scale) return std::nullopt;
  // Cramer's rule for 2 <m, c - q0> = |m|^2, m in {a, b, d}.
  const std::array<double, 3> rhs{dot3(a, a) / 2, dot3(b, b) / 2, dot3(d, d) / 2};
  const std::array<double, 3> col0{a[0], b[0], d[0]};
  const std::array<double, 3> col1{a[1], b[1], d[1]};
  const std::array<double, 3> col2{a[2], b[2], d[2]};
  std::array<double, 3> c{};
  c[0] = q[0][0] + det3(rhs, col1, col2) / det3(col0, col1, col2);
  c[1] = q[0][1] + det3(col0, rhs, col2) / det3(col0, col1, col2);
  c[2] = q[0][2] + det3(col0, col1, rhs) / det3(col0, col1, col2);
  return Ball3{c, std::sqrt(dot3(sub(q[0], c), sub(q[0], c)))};
}

// Minimum enclosing ball radius of points in R^1..R^3: the smallest
// circumball of a support subset (size <= 4) that contains every point.
inline double meb_radius(const std::vector<Point>& points) {
  std::vector<std::array<double, 3>> q;
  for (const auto& p : points) q.push_back(lift(p));
  const std::size_t n = q.size();
  double scale = 0.0;
  for (const auto& a : q)
    for (const auto& b : q) scale = std::max(scale, std::sqrt(dot3(sub(a, b), sub(a, b))));
  double best = std::numeric_limits<double>::infinity();
  const std::size_t limit = std::min<std::size_t>(n, 4);
  std::vector<std::size_t> idx;
  auto visit = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) {
      std::vector<std::array<double, 3>> sub_pts;
      for (std::size_t i : idx) sub_pts.push_back(q[i]);
      if (const auto ball = circumball(sub_pts)) {
        bool encloses = true;
        for (const auto& p : q) {
          const auto d = sub(p, ball->center);
          if (std::sqrt(dot3(d, d)) > ball->radius + 1e-12 * (1.0 + scale)) {
            encloses = false;
            break;
          }
        }
        if (encloses) best = std::min(best, ball->radius);
      }
    }
    if (idx.size() == limit) return;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

inline double pairwise_diameter(const std::vector<Point>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < pts[i].dim(); ++c) s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
      d = std::max(d, std::sqrt(s));
    }
  return d;
}

inline double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.dim(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
  return std::sqrt(s);
}

// Nearest point among a dense sample.
inline Point argmin_sample(const std::vector<Point>& sample, const Point& x) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double d = euclid(sample[i], x);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return sample[best];
}

// Ellipse x^2/a^2 + y^2/b^2 = 1 sampled at n parameter values.
inline std::vector<Point> ellipse_samples(double a, double b, std::size_t n) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back(Point{a * std::cos(t), b * std::sin(t)});
  }
  return pts;
}

// Distance from x to the torus by a parameter-grid scan followed by three
// rounds of local grid refinement around the best cell.
inline double torus_distance(double major, double minor, const Point& x) {
  auto at = [&](double u, double v) {
    const double w = major + minor * std::cos(v);
    return euclid(Point{w * std::cos(u), w * std::sin(u), minor * std::sin(v)}, x);
  };
  const std::size_t n = 400;
  double bu = 0.0, bv = 0.0, best = at(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double u = 2.0 * M_PI * static_cast<double>(i) / n;
      const double v = 2.0 * M_PI * static_cast<double>(j) / n;
      const double d = at(u, v);
      if (d < best) {
        best = d;
        bu = u;
        bv = v;
      }
    }
  double half = 4.0 * M_PI / n;
  for (int round = 0; round < 3; ++round) {
    const double cu = bu, cv = bv;
    for (std::size_t i = 0; i <= 200; ++i)
      for (std::size_t j = 0; j <= 200; ++j) {
        const double u = cu - half + 2 * half * static_cast<double>(i) / 200;
        const double v = cv - half + 2 * half * static_cast<double>(j) / 200;
        const double d = at(u, v);
        if (d < best) {
          best = d;
          bu = u;
          bv = v;
        }
      }
    half /= 50;
  }
  return best;
}

}  // namespace oracle
