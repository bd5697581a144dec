#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thicken/errors.hpp"
#include "thicken/euclid.hpp"
#include "thicken/random.hpp"

using namespace thicken;

TEST_SUITE("euclid") {
  TEST_CASE("distance of small configurations") {
    CHECK(distance(Point{0, 0}, Point{3, 4}) == 5.0);
    CHECK(distance(Point{1, 1}, Point{1, 1}) == 0.0);
    CHECK(distance(Point{0, 0, 0}, Point{1, 1, 1}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(distance(Point{0, 0}, Point{0, 0, 0}), DimensionMismatch);
  }

  TEST_CASE("non-finite coordinates are rejected") {
    CHECK_THROWS_AS((Point{0.0, std::nan("")}), InvalidArgument);
    CHECK_THROWS_AS((Point{INFINITY}), InvalidArgument);
  }

  TEST_CASE("diameter") {
    const std::vector<Point> one{Point{0, 0}};
    CHECK(diameter(one) == 0.0);
    const std::vector<Point> tri{Point{0, 0}, Point{1, 0}, Point{0, 1}};
    CHECK(diameter(tri) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }

  TEST_CASE("diameter matches the pairwise maximum on random points") {
    Rng rng(11);
    std::vector<Point> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(Point{uniform01(rng), uniform01(rng)});
    CHECK(diameter(pts) == oracle::pairwise_diameter(pts));
  }

  TEST_CASE("convex combinations") {
    const std::vector<Point> seg{Point{0, 0}, Point{2, 0}};
    const std::vector<double> half{0.5, 0.5};
    CHECK(convex_combination(seg, half) == Point{1, 0});
    const std::vector<Point> one{Point{1, 1}};
    const std::vector<double> w1{1.0};
    CHECK(convex_combination(one, w1) == Point{1, 1});
    const std::vector<Point> tri{Point{0, 0}, Point{1, 0}, Point{0, 1}};
    const std::vector<double> third{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const Point c = convex_combination(tri, third);
    CHECK(c[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(c[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    const std::vector<double> bad_sum{0.5, 0.4};
    CHECK_THROWS_AS(convex_combination(seg, bad_sum), InvalidArgument);
    const std::vector<double> negative{1.5, -0.5};
    CHECK_THROWS_AS(convex_combination(seg, negative), InvalidArgument);
  }

  TEST_CASE("open half-space excludes its boundary") {
    const HalfSpace h(Point{0, 0}, Point{1, 0});
    CHECK(h.contains(Point{1, 0}));
    CHECK_FALSE(h.contains(Point{0, 5}));
    CHECK_FALSE(h.contains(Point{-0.1, 0}));
  }

  TEST_CASE("ball membership is exact at the radius") {
    const Ball closed(Point{0, 0}, 1.0, true);
    const Ball open(Point{0, 0}, 1.0, false);
    CHECK(closed.contains(Point{1, 0}));
    CHECK_FALSE(open.contains(Point{1, 0}));
    CHECK(open.contains(Point{0.5, 0.5}));
  }

  TEST_CASE("triangle inequality on random triples") {
    Rng rng(5);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t dim = 1 + t % 3;
      auto draw = [&] {
        std::vector<double> c(dim);
        for (double& x : c) x = 4.0 * standard_normal(rng);
        return Point(c);
      };
      const Point a = draw(), b = draw(), c = draw();
      CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
      CHECK(distance(a, b) == distance(b, a));
    }
  }

  TEST_CASE("distinct uses a coordinate tolerance") {
    CHECK_FALSE(distinct(Point{0, 0}, Point{0, 1e-13}));
    CHECK(distinct(Point{0, 0}, Point{0, 1e-9}));
  }
}
