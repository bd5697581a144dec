#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace thicken {

// Tolerance context threaded through every geometric predicate.
struct Tolerances {
  double geo = 1e-9;  // relative band around predicate thresholds
  double med = 1e-6;  // medial-axis guard, relative to the reach
};

// A point of R^n. Dimension is a runtime property; all coordinates finite.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zero(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double s);

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }

  // Bitwise coordinate equality.
  friend bool operator==(const Point& a, const Point& b) = default;

  std::string str() const;

 private:
  std::vector<double> coords_;
};

void require_same_dim(const Point& a, const Point& b);

double dot(const Point& a, const Point& b);
double norm(const Point& a);
double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

// Largest pairwise distance; 0 for a singleton.
double diameter(std::span<const Point> points);

// Sum of weights[i] * points[i]. Weights must be nonnegative (to -1e-12)
// and sum to one (to 1e-12).
Point convex_combination(std::span<const Point> points, std::span<const double> weights);

// True if two points differ by more than `tol` in some coordinate.
bool distinct(const Point& a, const Point& b, double tol = 1e-12);

// Open half-space {z : <z - anchor, normal> > 0}.
class HalfSpace {
 public:
  HalfSpace(Point anchor, Point normal);

  const Point& anchor() const noexcept { return anchor_; }
  const Point& normal() const noexcept { return normal_; }
  bool contains(const Point& z) const;

 private:
  Point anchor_;
  Point normal_;
};

class Ball {
 public:
  Ball(Point center, double radius, bool closed);

  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  bool closed() const noexcept { return closed_; }
  // Exact comparison: <= radius when closed, < radius when open.
  bool contains(const Point& z) const;

 private:
  Point center_;
  double radius_;
  bool closed_;
};

}  // namespace thicken
