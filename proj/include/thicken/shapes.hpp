#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thicken/euclid.hpp"
#include "thicken/random.hpp"

namespace thicken {

// Circle of the given radius centred at the origin of R^2.
struct Circle {
  double radius = 1.0;
};

// x^2/a^2 + y^2/b^2 = 1 in R^2, a >= b > 0.
struct Ellipse {
  double a = 2.0;
  double b = 1.0;
};

// Round sphere of the given radius centred at the origin of R^dim.
struct Sphere {
  std::size_t dim = 3;
  double radius = 1.0;
};

// Torus of revolution about the z-axis of R^3.
struct Torus {
  double major = 3.0;
  double minor = 1.0;
};

// {-1, 1} in R^1.
struct ZeroSphere {};

struct FinitePointSet {
  std::vector<Point> points;
};

// A subset of R^n of positive reach that knows its own reach, nearest-point
// projection and medial axis in closed form.
class Shape {
 public:
  using Kind = std::variant<Circle, Ellipse, Sphere, Torus, ZeroSphere, FinitePointSet>;

  explicit Shape(Kind kind);

  // Parses descriptors such as "circle R=1", "ellipse a=2 b=1",
  // "sphere n=3 R=1", "torus R=3 rho=1", "zero-sphere" and
  // "points 0,0;3,0".
  static Shape parse(std::string_view descriptor);
  static Shape parse(const std::vector<std::string>& tokens);

  const Kind& kind() const noexcept { return kind_; }
  std::size_t ambient_dim() const noexcept { return dim_; }
  bool is_finite() const noexcept;

  // Short human label, e.g. "ellipse(a=2,b=1)".
  std::string name() const;
  // Round-trips through parse().
  std::string descriptor() const;

  double reach() const noexcept { return reach_; }

  // Unique nearest point of the shape. Throws MedialAxisProximity when x is
  // within tol.med * reach of the medial axis.
  Point project(const Point& x, const Tolerances& tol = {}) const;

  // Distance from x to the shape; defined everywhere.
  double distance(const Point& x) const;

  // Distance from x to the (closure of the) medial axis.
  double medial_axis_distance(const Point& x) const;

  bool contains(const Point& x, double tol = 1e-9) const { return distance(x) <= tol; }

  Point sample_one(Rng& rng) const;
  std::vector<Point> sample(std::size_t count, std::uint64_t seed) const;

  // Deterministic parametric sample; `resolution` is the number of points
  // per unit parameter direction (curves get `resolution` points, surfaces a
  // grid of comparable spacing).
  std::vector<Point> parametric_samples(std::size_t resolution) const;

 private:
  Point nearest_unchecked(const Point& x) const;

  Kind kind_;
  std::size_t dim_ = 0;
  double reach_ = 0.0;
};

// Brute-force reach estimate from a grid scan of the ambient box; see
// reach_estimate.cpp. Only for shapes in R^1..R^3.
double estimate_reach(const Shape& shape, std::size_t grid_density);

}  // namespace thicken
