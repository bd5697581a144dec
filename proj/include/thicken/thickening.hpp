#pragma once

#include <cstddef>

#include "thicken/complexes.hpp"
#include "thicken/euclid.hpp"
#include "thicken/transport.hpp"

namespace thicken {

inline constexpr std::size_t kMaxThickeningSupport = 64;

// A measure whose support is a simplex of the complex described by spec.
class ThickeningPoint {
 public:
  const Measure& measure() const noexcept { return measure_; }
  const ComplexSpec& spec() const noexcept { return spec_; }

 private:
  friend ThickeningPoint make_thickening_point(Measure measure, const ComplexSpec& spec);

  ThickeningPoint(Measure measure, ComplexSpec spec) : measure_(std::move(measure)), spec_(std::move(spec)) {}

  Measure measure_;
  ComplexSpec spec_;
};

// Validates the support against the simplex predicate of `spec`. Throws
// SimplexViolation with a report when it fails, SizeLimitExceeded above 64
// atoms; AmbiguousPredicate propagates.
ThickeningPoint make_thickening_point(Measure measure, const ComplexSpec& spec);

// Barycenter of the support.
Point linear_projection_f(const ThickeningPoint& tp);

// Dirac mass at x. When `spec` carries a shape, x must lie on it (1e-9).
ThickeningPoint inclusion_iota(const Point& x, const ComplexSpec& spec);

// 1-Wasserstein distance; both complex specs must be compatible.
double thickening_distance(const ThickeningPoint& a, const ThickeningPoint& b);

}  // namespace thicken
