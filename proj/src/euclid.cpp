#include "thicken/euclid.hpp"

#include <cmath>

#include "thicken/errors.hpp"
#include "thicken/text.hpp"

namespace thicken {

namespace {

void validate(const std::vector<double>& coords) {
  if (coords.empty()) throw InvalidArgument("point must have dimension >= 1");
  for (double c : coords) {
    if (!std::isfinite(c)) throw InvalidArgument("point coordinates must be finite");
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { validate(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { validate(coords_); }

Point Point::zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

Point& Point::operator+=(const Point& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

std::string Point::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ',';
    out += format_real(coords_[i]);
  }
  return out + ')';
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

double dot(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a) {
  double s = 0.0;
  for (double c : a.coords()) s += c * c;
  return std::sqrt(s);
}

double squared_distance(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

double diameter(std::span<const Point> points) {
  if (points.empty()) throw InvalidArgument("diameter of an empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_same_dim(points[0], points[i]);
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, squared_distance(points[i], points[j]));
    }
  }
  return std::sqrt(best);
}

Point convex_combination(std::span<const Point> points, std::span<const double> weights) {
  if (points.empty()) throw InvalidArgument("convex combination of no points");
  if (points.size() != weights.size()) {
    throw InvalidArgument("convex combination: points and weights differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= -1e-12)) throw InvalidArgument("convex combination: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("convex combination: weights do not sum to one");
  }
  Point out = Point::zero(points[0].dim());
  for (std::size_t i = 0; i < points.size(); ++i) out += points[i] * weights[i];
  return out;
}

bool distinct(const Point& a, const Point& b, double tol) {
  require_same_dim(a, b);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return true;
  }
  return false;
}

HalfSpace::HalfSpace(Point anchor, Point normal)
    : anchor_(std::move(anchor)), normal_(std::move(normal)) {
  require_same_dim(anchor_, normal_);
  if (norm(normal_) == 0.0) throw InvalidArgument("half-space normal must be nonzero");
}

bool HalfSpace::contains(const Point& z) const { return dot(z - anchor_, normal_) > 0.0; }

Ball::Ball(Point center, double radius, bool closed)
    : center_(std::move(center)), radius_(radius), closed_(closed) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ball radius must be finite and nonnegative");
  }
}

bool Ball::contains(const Point& z) const {
  const double d = distance(center_, z);
  return closed_ ? d <= radius_ : d < radius_;
}

}  // namespace thicken
