#include "thicken/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "thicken/errors.hpp"
#include "thicken/text.hpp"

namespace thicken {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt_num(double v) { return format_real(v); }

double parse_double(const std::string& text, const std::string& what) { return parse_real(text, "shape " + what); }

std::vector<Point> parse_point_list(const std::string& text) {
  std::vector<Point> points;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    std::vector<double> coords;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) coords.push_back(parse_double(item, "point coordinate"));
    points.emplace_back(std::move(coords));
  }
  return points;
}

// Nearest point of the ellipse x^2/a^2 + y^2/b^2 = 1 to (x, y) with
// x, y >= 0. Root of F(t) = (a x/(t+a^2))^2 + (b y/(t+b^2))^2 - 1 on
// (-b^2, inf) by safeguarded Newton; F is convex and decreasing there.
std::pair<double, double> ellipse_nearest_quadrant(double a, double b, double x, double y) {
  const double c2 = a * a - b * b;
  if (y == 0.0) {
    if (x * a > c2) return {a, 0.0};
    if (c2 == 0.0) return {0.0, b};
    const double u = a * x / c2;
    return {a * u, b * std::sqrt(std::max(0.0, 1.0 - u * u))};
  }
  const double ax = a * x;
  const double by = b * y;
  double lo = -b * b + by;
  double hi = -b * b + std::sqrt(ax * ax + by * by);
  double t = lo;
  for (int iter = 0; iter < 80; ++iter) {
    const double ta = t + a * a;
    const double tb = t + b * b;
    const double p = ax / ta;
    const double q = by / tb;
    const double value = p * p + q * q - 1.0;
    if (value == 0.0) break;
    if (value > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = -2.0 * (p * p / ta + q * q / tb);
    double next = t - value / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)) &&
        std::abs(value) <= 1e-12) {
      t = next;
      break;
    }
    t = next;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) break;
  }
  return {a * a * x / (t + a * a), b * b * y / (t + b * b)};
}

std::size_t dimension_of(const Shape::Kind& kind) {
  return std::visit(Overloaded{
                        [](const Circle&) -> std::size_t { return 2; },
                        [](const Ellipse&) -> std::size_t { return 2; },
                        [](const Sphere& s) -> std::size_t { return s.dim; },
                        [](const Torus&) -> std::size_t { return 3; },
                        [](const ZeroSphere&) -> std::size_t { return 1; },
                        [](const FinitePointSet& f) -> std::size_t { return f.points.front().dim(); },
                    },
                    kind);
}

}  // namespace

Shape::Shape(Kind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [](const Circle& c) {
                   if (!(c.radius > 0.0)) throw InvalidArgument("circle radius must be positive");
                 },
                 [](const Ellipse& e) {
                   if (!(e.b > 0.0 && e.a >= e.b)) throw InvalidArgument("ellipse needs a >= b > 0");
                 },
                 [](const Sphere& s) {
                   if (s.dim < 1) throw InvalidArgument("sphere ambient dimension must be >= 1");
                   if (!(s.radius > 0.0)) throw InvalidArgument("sphere radius must be positive");
                 },
                 [](const Torus& t) {
                   if (!(t.minor > 0.0 && t.major > t.minor)) {
                     throw InvalidArgument("torus needs major > minor > 0");
                   }
                 },
                 [](const ZeroSphere&) {},
                 [](const FinitePointSet& f) {
                   if (f.points.size() < 2) throw InvalidArgument("finite point set needs >= 2 points");
                   for (std::size_t i = 0; i < f.points.size(); ++i) {
                     require_same_dim(f.points[0], f.points[i]);
                     for (std::size_t j = 0; j < i; ++j) {
                       if (!distinct(f.points[i], f.points[j])) {
                         throw InvalidArgument("finite point set has duplicate points");
                       }
                     }
                   }
                 },
             },
             kind_);
  dim_ = dimension_of(kind_);
  reach_ = std::visit(Overloaded{
                          [](const Circle& c) { return c.radius; },
                          [](const Ellipse& e) { return e.b * e.b / e.a; },
                          [](const Sphere& s) { return s.radius; },
                          [](const Torus& t) { return std::min(t.minor, t.major - t.minor); },
                          [](const ZeroSphere&) { return 1.0; },
                          [](const FinitePointSet& f) {
                            double best = std::numeric_limits<double>::infinity();
                            for (std::size_t i = 0; i < f.points.size(); ++i) {
                              for (std::size_t j = i + 1; j < f.points.size(); ++j) {
                                best = std::min(best, thicken::distance(f.points[i], f.points[j]));
                              }
                            }
                            return 0.5 * best;
                          },
                      },
                      kind_);
}

Shape Shape::parse(std::string_view descriptor) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(descriptor)};
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return parse(tokens);
}

Shape Shape::parse(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw InvalidArgument("empty shape descriptor");
  const std::string& kind = tokens[0];
  std::map<std::string, std::string> params;
  std::vector<std::string> bare;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      bare.push_back(tokens[i]);
    } else {
      params[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = parse_double(it->second, key);
    params.erase(it);
    return v;
  };
  auto finish = [&](Shape s) {
    if (!params.empty()) throw InvalidArgument("shape: unknown parameter '" + params.begin()->first + "'");
    return s;
  };

  if (kind == "circle") return finish(Shape(Circle{take("R", 1.0)}));
  if (kind == "ellipse") {
    const double a = take("a", 2.0);
    const double b = take("b", 1.0);
    return finish(Shape(Ellipse{a, b}));
  }
  if (kind == "sphere") {
    const double n = take("n", 3.0);
    if (n < 1.0 || n != std::floor(n)) throw InvalidArgument("sphere: n must be a positive integer");
    return finish(Shape(Sphere{static_cast<std::size_t>(n), take("R", 1.0)}));
  }
  if (kind == "torus") {
    const double major = take("R", 3.0);
    return finish(Shape(Torus{major, take("rho", 1.0)}));
  }
  if (kind == "zero-sphere" || kind == "s0") return finish(Shape(ZeroSphere{}));
  if (kind == "points") {
    std::string list;
    if (auto it = params.find("p"); it != params.end()) {
      list = it->second;
      params.erase(it);
    }
    for (const auto& b : bare) list += (list.empty() ? "" : ";") + b;
    return finish(Shape(FinitePointSet{parse_point_list(list)}));
  }
  throw InvalidArgument("unknown shape kind '" + kind + "'");
}

bool Shape::is_finite() const noexcept {
  return std::holds_alternative<ZeroSphere>(kind_) || std::holds_alternative<FinitePointSet>(kind_);
}

std::string Shape::name() const {
  return std::visit(Overloaded{
                        [](const Circle& c) { return "circle(R=" + fmt_num(c.radius) + ")"; },
                        [](const Ellipse& e) {
                          return "ellipse(a=" + fmt_num(e.a) + ",b=" + fmt_num(e.b) + ")";
                        },
                        [](const Sphere& s) {
                          return "sphere(n=" + std::to_string(s.dim) + ",R=" + fmt_num(s.radius) + ")";
                        },
                        [](const Torus& t) {
                          return "torus(R=" + fmt_num(t.major) + ",rho=" + fmt_num(t.minor) + ")";
                        },
                        [](const ZeroSphere&) { return std::string("zero-sphere"); },
                        [](const FinitePointSet& f) {
                          return "points(" + std::to_string(f.points.size()) + ")";
                        },
                    },
                    kind_);
}

std::string Shape::descriptor() const {
  return std::visit(Overloaded{
                        [](const Circle& c) { return "circle R=" + fmt_num(c.radius); },
                        [](const Ellipse& e) { return "ellipse a=" + fmt_num(e.a) + " b=" + fmt_num(e.b); },
                        [](const Sphere& s) {
                          return "sphere n=" + std::to_string(s.dim) + " R=" + fmt_num(s.radius);
                        },
                        [](const Torus& t) {
                          return "torus R=" + fmt_num(t.major) + " rho=" + fmt_num(t.minor);
                        },
                        [](const ZeroSphere&) { return std::string("zero-sphere"); },
                        [](const FinitePointSet& f) {
                          std::string out = "points p=";
                          for (std::size_t i = 0; i < f.points.size(); ++i) {
                            if (i) out += ';';
                            for (std::size_t k = 0; k < f.points[i].dim(); ++k) {
                              if (k) out += ',';
                              out += fmt_num(f.points[i][k]);
                            }
                          }
                          return out;
                        },
                    },
                    kind_);
}

double Shape::medial_axis_distance(const Point& x) const {
  if (x.dim() != dim_) throw DimensionMismatch("point dimension does not match shape");
  return std::visit(
      Overloaded{
          [&](const Circle&) { return norm(x); },
          [&](const Sphere&) { return norm(x); },
          [&](const ZeroSphere&) { return std::abs(x[0]); },
          [&](const Ellipse& e) {
            const double half = (e.a * e.a - e.b * e.b) / e.a;
            const double dx = std::max(std::abs(x[0]) - half, 0.0);
            return std::hypot(dx, x[1]);
          },
          [&](const Torus& t) {
            const double radial = std::hypot(x[0], x[1]);
            return std::min(std::hypot(radial - t.major, x[2]), radial);
          },
          [&](const FinitePointSet& f) {
            std::size_t best = 0;
            double best_d2 = squared_distance(x, f.points[0]);
            for (std::size_t i = 1; i < f.points.size(); ++i) {
              const double d2 = squared_distance(x, f.points[i]);
              if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
              }
            }
            double out = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < f.points.size(); ++j) {
              if (j == best) continue;
              const double gap = squared_distance(x, f.points[j]) - best_d2;
              out = std::min(out, gap / (2.0 * thicken::distance(f.points[j], f.points[best])));
            }
            return out;
          },
      },
      kind_);
}

Point Shape::nearest_unchecked(const Point& x) const {
  if (x.dim() != dim_) throw DimensionMismatch("point dimension does not match shape");
  return std::visit(
      Overloaded{
          [&](const Circle& c) {
            const double n = norm(x);
            if (n == 0.0) return Point{c.radius, 0.0};
            return x * (c.radius / n);
          },
          [&](const Sphere& s) {
            const double n = norm(x);
            if (n == 0.0) {
              std::vector<double> v(s.dim, 0.0);
              v[0] = s.radius;
              return Point(std::move(v));
            }
            return x * (s.radius / n);
          },
          [&](const ZeroSphere&) { return Point{x[0] >= 0.0 ? 1.0 : -1.0}; },
          [&](const Ellipse& e) {
            const auto [px, py] = ellipse_nearest_quadrant(e.a, e.b, std::abs(x[0]), std::abs(x[1]));
            return Point{std::copysign(px, x[0]), std::copysign(py, x[1])};
          },
          [&](const Torus& t) {
            const double radial = std::hypot(x[0], x[1]);
            const double cx = radial > 0.0 ? x[0] / radial : 1.0;
            const double cy = radial > 0.0 ? x[1] / radial : 0.0;
            const Point core{t.major * cx, t.major * cy, 0.0};
            Point offset = x - core;
            double len = norm(offset);
            if (len == 0.0) {
              offset = Point{cx, cy, 0.0};
              len = 1.0;
            }
            return core + offset * (t.minor / len);
          },
          [&](const FinitePointSet& f) {
            std::size_t best = 0;
            double best_d2 = squared_distance(x, f.points[0]);
            for (std::size_t i = 1; i < f.points.size(); ++i) {
              const double d2 = squared_distance(x, f.points[i]);
              if (d2 < best_d2) {
                best_d2 = d2;
                best = i;
              }
            }
            return f.points[best];
          },
      },
      kind_);
}

Point Shape::project(const Point& x, const Tolerances& tol) const {
  const double medial = medial_axis_distance(x);
  if (medial < tol.med * reach_) {
    throw MedialAxisProximity("point " + x.str() + " is within " + fmt_num(medial) +
                              " of the medial axis of " + name());
  }
  return nearest_unchecked(x);
}

double Shape::distance(const Point& x) const {
  if (x.dim() != dim_) throw DimensionMismatch("point dimension does not match shape");
  return std::visit(Overloaded{
                        [&](const Circle& c) { return std::abs(norm(x) - c.radius); },
                        [&](const Sphere& s) { return std::abs(norm(x) - s.radius); },
                        [&](const ZeroSphere&) { return std::abs(std::abs(x[0]) - 1.0); },
                        [&](const Torus& t) {
                          const double radial = std::hypot(x[0], x[1]);
                          return std::abs(std::hypot(radial - t.major, x[2]) - t.minor);
                        },
                        [&](const auto&) { return thicken::distance(x, nearest_unchecked(x)); },
                    },
                    kind_);
}

Point Shape::sample_one(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&](const Circle& c) {
            const double th = kTwoPi * uniform01(rng);
            return Point{c.radius * std::cos(th), c.radius * std::sin(th)};
          },
          [&](const Ellipse& e) {
            // Arc-length uniform: accept theta with probability speed / a.
            for (;;) {
              const double th = kTwoPi * uniform01(rng);
              const double speed = std::hypot(e.a * std::sin(th), e.b * std::cos(th));
              if (uniform01(rng) * e.a <= speed) return Point{e.a * std::cos(th), e.b * std::sin(th)};
            }
          },
          [&](const Sphere& s) {
            for (;;) {
              std::vector<double> v(s.dim);
              double len2 = 0.0;
              for (double& c : v) {
                c = standard_normal(rng);
                len2 += c * c;
              }
              if (len2 < 1e-24) continue;
              const double scale = s.radius / std::sqrt(len2);
              for (double& c : v) c *= scale;
              return Point(std::move(v));
            }
          },
          [&](const Torus& t) {
            for (;;) {
              const double phi = kTwoPi * uniform01(rng);
              const double theta = kTwoPi * uniform01(rng);
              const double ring = t.major + t.minor * std::cos(theta);
              if (uniform01(rng) * (t.major + t.minor) <= ring) {
                return Point{ring * std::cos(phi), ring * std::sin(phi), t.minor * std::sin(theta)};
              }
            }
          },
          [&](const ZeroSphere&) { return Point{uniform01(rng) < 0.5 ? -1.0 : 1.0}; },
          [&](const FinitePointSet& f) {
            const auto i = std::uniform_int_distribution<std::size_t>(0, f.points.size() - 1)(rng);
            return f.points[i];
          },
      },
      kind_);
}

std::vector<Point> Shape::sample(std::size_t count, std::uint64_t seed) const {
  if (count == 0) throw InvalidArgument("sample count must be positive");
  Rng rng(splitmix64(seed));
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_one(rng));
  return out;
}

std::vector<Point> Shape::parametric_samples(std::size_t resolution) const {
  const std::size_t res = std::max<std::size_t>(resolution, 8);
  std::vector<Point> out;
  auto ring = [&](double sx, double sy) {
    for (std::size_t i = 0; i < res; ++i) {
      const double th = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(res);
      out.push_back(Point{sx * std::cos(th), sy * std::sin(th)});
    }
  };
  std::visit(Overloaded{
                 [&](const Circle& c) { ring(c.radius, c.radius); },
                 [&](const Ellipse& e) { ring(e.a, e.b); },
                 [&](const Sphere& s) {
                   if (s.dim == 1) {
                     out = {Point{-s.radius}, Point{s.radius}};
                   } else if (s.dim == 2) {
                     ring(s.radius, s.radius);
                   } else if (s.dim == 3) {
                     // Fibonacci lattice with spacing comparable to a ring of `res`.
                     const std::size_t n = res * res / 3;
                     const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
                     for (std::size_t i = 0; i < n; ++i) {
                       const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
                       const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
                       const double th = golden * static_cast<double>(i);
                       out.push_back(Point{s.radius * rad * std::cos(th), s.radius * rad * std::sin(th),
                                           s.radius * z});
                     }
                   } else {
                     throw InvalidArgument("parametric samples only for spheres in R^1..R^3");
                   }
                 },
                 [&](const Torus& t) {
                   const std::size_t n_theta = std::max<std::size_t>(
                       8, static_cast<std::size_t>(std::ceil(res * t.minor / (t.major + t.minor))));
                   for (std::size_t i = 0; i < res; ++i) {
                     const double phi = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(res);
                     for (std::size_t j = 0; j < n_theta; ++j) {
                       const double theta =
                           kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n_theta);
                       const double r = t.major + t.minor * std::cos(theta);
                       out.push_back(Point{r * std::cos(phi), r * std::sin(phi), t.minor * std::sin(theta)});
                     }
                   }
                 },
                 [&](const ZeroSphere&) { out = {Point{-1.0}, Point{1.0}}; },
                 [&](const FinitePointSet& f) { out = f.points; },
             },
             kind_);
  return out;
}

}  // namespace thicken
