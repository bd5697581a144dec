#include "thicken/thickening.hpp"

#include "thicken/errors.hpp"
#include "thicken/text.hpp"

namespace thicken {

ThickeningPoint make_thickening_point(Measure measure, const ComplexSpec& spec) {
  if (measure.size() > kMaxThickeningSupport) throw SizeLimitExceeded("thickening point support above 64 atoms");
  if (spec.shape && spec.shape->ambient_dim() != measure.ambient_dim()) {
    throw DimensionMismatch("measure dimension does not match the shape of the complex");
  }
  const Simplex s(measure.support());
  if (!is_simplex(s, spec)) {
    std::string report = "support of " + std::to_string(s.size()) + " atoms is not a simplex of " + spec.str();
    if (spec.flavor == Flavor::VietorisRips) {
      report += " (diameter " + format_real(diameter(s.vertices())) + ")";
    } else {
      report += " (enclosing radius " + format_real(min_enclosing_ball(s.vertices()).radius) + ")";
    }
    throw SimplexViolation(report);
  }
  return ThickeningPoint(std::move(measure), spec);
}

Point linear_projection_f(const ThickeningPoint& tp) {
  return convex_combination(tp.measure().support(), tp.measure().weights());
}

ThickeningPoint inclusion_iota(const Point& x, const ComplexSpec& spec) {
  if (spec.shape) {
    if (spec.shape->ambient_dim() != x.dim()) throw DimensionMismatch("point dimension does not match shape");
    if (!spec.shape->contains(x)) throw InvalidArgument("inclusion: point " + x.str() + " is not on the shape");
  }
  return make_thickening_point(Measure::dirac(x), spec);
}

double thickening_distance(const ThickeningPoint& a, const ThickeningPoint& b) {
  if (!a.spec().compatible(b.spec())) throw InvalidArgument("thickening points come from different complexes");
  return wasserstein1(a.measure(), b.measure()).value;
}

}  // namespace thicken
