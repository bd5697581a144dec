#include <doctest.h>

#include <cmath>
#include <memory>

#include "thicken/errors.hpp"
#include "thicken/random.hpp"
#include "thicken/retraction.hpp"
#include "thicken/thickening.hpp"

using namespace thicken;

namespace {

std::shared_ptr<const Shape> circle() {
  static const auto s = std::make_shared<const Shape>(Shape::parse("circle R=1"));
  return s;
}

Point on_circle(double a) { return Point{std::cos(a), std::sin(a)}; }

}  // namespace

TEST_SUITE("thickening") {
  TEST_CASE("construction validates the support") {
    const ComplexSpec vr(Flavor::VietorisRips, 0.9, false, circle());
    CHECK_THROWS_AS(make_thickening_point(Measure({Point{1, 0}, Point{-1, 0}}, {0.5, 0.5}), vr), SimplexViolation);
    CHECK_NOTHROW(make_thickening_point(Measure::dirac(on_circle(2.0)), vr));
    const Measure three({on_circle(0.0), on_circle(0.25), on_circle(0.5)}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK_NOTHROW(make_thickening_point(three, vr));
    try {
      make_thickening_point(Measure({Point{1, 0}, Point{-1, 0}}, {0.5, 0.5}), vr);
    } catch (const SimplexViolation& e) {
      CHECK(e.report().find("diameter") != std::string::npos);
    }
  }

  TEST_CASE("support size is capped") {
    std::vector<Point> pts;
    for (int i = 0; i < 65; ++i) pts.push_back(on_circle(1e-4 * i));
    const Measure m(pts, std::vector<double>(65, 1.0 / 65));
    CHECK_THROWS_AS(make_thickening_point(m, ComplexSpec(Flavor::VietorisRips, 0.9, false, circle())),
                    SizeLimitExceeded);
  }

  TEST_CASE("linear projection") {
    const ComplexSpec vr(Flavor::VietorisRips, 0.9, false, circle());
    const Point x = on_circle(1.0);
    CHECK(linear_projection_f(make_thickening_point(Measure::dirac(x), vr)) == x);
    const Point a{1, 0};
    const Point b = on_circle(0.4);
    const Point mid = linear_projection_f(make_thickening_point(Measure({a, b}, {0.5, 0.5}), vr));
    CHECK(distance(mid, 0.5 * (a + b)) < 1e-15);
  }

  TEST_CASE("inclusion") {
    const ComplexSpec vr(Flavor::VietorisRips, 0.9, false, circle());
    const auto tp = inclusion_iota(Point{1, 0}, vr);
    CHECK(tp.measure().size() == 1);
    CHECK(tp.measure().support()[0] == Point{1, 0});
    CHECK_THROWS_AS(inclusion_iota(Point{0.5, 0}, vr), InvalidArgument);
    CHECK(linear_projection_f(inclusion_iota(on_circle(2.5), vr)) == on_circle(2.5));
  }

  TEST_CASE("distance") {
    const ComplexSpec vr(Flavor::VietorisRips, 0.9, false, circle());
    const auto x = inclusion_iota(on_circle(0.3), vr);
    const auto y = inclusion_iota(on_circle(1.3), vr);
    CHECK(thickening_distance(x, x) == 0.0);
    CHECK(thickening_distance(x, y) == doctest::Approx(distance(on_circle(0.3), on_circle(1.3))).epsilon(1e-15));
    const auto z = inclusion_iota(on_circle(0.3), vr.at_scale(0.8));
    CHECK_THROWS_AS(thickening_distance(x, z), InvalidArgument);
  }

  TEST_CASE("distance matches the transport oracle on random pairs") {
    const ComplexSpec vr(Flavor::VietorisRips, 0.9, false, circle());
    Rng rng(97);
    for (int t = 0; t < 200; ++t) {
      const auto a = sample_thickening_point(vr, 1 + t % 4, rng).tp;
      const auto b = sample_thickening_point(vr, 1 + (t / 4) % 4, rng).tp;
      CHECK(thickening_distance(a, b) == doctest::Approx(oracle_wasserstein1(a.measure(), b.measure())).epsilon(1e-9));
    }
  }

  TEST_CASE("f is 1-Lipschitz and a left inverse of the inclusion") {
    for (Flavor flavor : {Flavor::VietorisRips, Flavor::CechAmbient}) {
      const ComplexSpec spec(flavor, 0.9, false, circle());
      Rng rng(101);
      for (int t = 0; t < 300; ++t) {
        const auto a = sample_thickening_point(spec, 1 + t % 5, rng).tp;
        const auto b = sample_thickening_point(spec, 1 + (t / 5) % 5, rng).tp;
        CHECK(distance(linear_projection_f(a), linear_projection_f(b)) <= thickening_distance(a, b) + 1e-9);
        const Point x = circle()->sample_one(rng);
        CHECK(linear_projection_f(inclusion_iota(x, spec)) == x);
      }
    }
  }
}
