#include "thicken/retraction.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <thread>

#include "thicken/errors.hpp"
#include "thicken/text.hpp"

namespace thicken {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::string_view, 11> kLemmaNames = {
    "Convex",    "VrTub",          "VrSimplex",        "CechRadius", "CechTub",          "CechSimplexAmbient",
    "CechSimplexIntrinsic", "EmptyBall", "FedererLipschitz", "FLipschitz", "HomotopyContract",
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string format_ms(double ms) { return format_real(std::round(ms * 1000.0) / 1000.0); }

}  // namespace

std::string_view lemma_name(LemmaId id) { return kLemmaNames[static_cast<std::size_t>(id)]; }

LemmaId parse_lemma(std::string_view text) {
  for (std::size_t i = 0; i < kLemmaNames.size(); ++i) {
    if (kLemmaNames[i] == text) return static_cast<LemmaId>(i);
  }
  throw InvalidArgument("unknown lemma id '" + std::string(text) + "'");
}

bool lemma_has_strictness(LemmaId id) {
  switch (id) {
    case LemmaId::Convex:
    case LemmaId::EmptyBall:
    case LemmaId::FedererLipschitz:
      return false;
    default:
      return true;
  }
}

std::string lemma_csv_header() {
  return "lemma_id,shape,r,k,trials,violations,ambiguous,worst_margin,seed,wall_time_ms,strict,starved";
}

std::string lemma_csv_row(const LemmaReport& rep) {
  std::string out(lemma_name(rep.lemma));
  out += ',' + csv_field(rep.shape);
  out += ',' + format_real(rep.r);
  out += ',' + std::to_string(rep.k);
  out += ',' + std::to_string(rep.trials);
  out += ',' + std::to_string(rep.violations);
  out += ',' + std::to_string(rep.ambiguous);
  out += ',' + format_real(rep.worst_margin);
  out += ',' + std::to_string(rep.seed);
  out += ',' + format_ms(rep.wall_time_ms);
  out += ',' + std::string(rep.strict ? "1" : "0");
  out += ',' + std::to_string(rep.starved);
  return out;
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("THICKEN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(n, 1);
}

namespace {

double tube_radius(const ComplexSpec& spec) {
  return spec.flavor == Flavor::VietorisRips ? spec.scale : 0.5 * spec.scale;
}

const Shape& require_shape(const ComplexSpec& spec) {
  if (!spec.shape) throw InvalidArgument("operation needs a complex spec with a shape");
  return *spec.shape;
}

}  // namespace

Point retract(const ThickeningPoint& tp) {
  const Shape& shape = require_shape(tp.spec());
  if (!(tube_radius(tp.spec()) < shape.reach())) {
    throw InvalidArgument("retract: scale " + format_real(tp.spec().scale) + " is not below the reach bound");
  }
  return shape.project(linear_projection_f(tp), tp.spec().tol);
}

ThickeningPoint homotopy_H(const ThickeningPoint& tp, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("homotopy_H: t must lie in [0, 1]");
  const Point p = retract(tp);
  std::vector<Point> support = tp.measure().support();
  std::vector<double> weights = tp.measure().weights();
  for (double& w : weights) w *= t;
  support.push_back(p);
  weights.push_back(1.0 - t);
  return make_thickening_point(Measure::merged(std::move(support), std::move(weights)), tp.spec());
}

SampledThickening sample_thickening_point(const ComplexSpec& spec, std::size_t points, Rng& rng) {
  const Shape& shape = require_shape(spec);
  points = std::clamp<std::size_t>(points, 1, kMaxThickeningSupport);
  const double half = 0.5 * spec.scale;
  std::optional<Point> witness;
  if (spec.flavor == Flavor::CechIntrinsic) {
    if (!spec.witnesses || spec.witnesses->empty()) {
      throw InvalidArgument("intrinsic sampling needs a nonempty witness set");
    }
    witness = (*spec.witnesses)[rng() % spec.witnesses->size()];
  }

  std::vector<Point> verts;
  verts.reserve(points);
  auto admissible = [&](const Point& y) {
    try {
      switch (spec.flavor) {
        case Flavor::VietorisRips:
          for (const Point& v : verts) {
            if (!banded_compare(distance(v, y), spec.scale, spec.strict, spec.tol.geo, "diameter")) return false;
          }
          return true;
        case Flavor::CechAmbient: {
          verts.push_back(y);
          const double radius = min_enclosing_ball(verts).radius;
          verts.pop_back();
          return banded_compare(radius, half, spec.strict, spec.tol.geo, "enclosing radius");
        }
        case Flavor::CechIntrinsic:
          return banded_compare(distance(y, *witness), half, spec.strict, spec.tol.geo, "witness radius");
      }
    } catch (const AmbiguousPredicate&) {
      return false;
    }
    return false;
  };

  for (std::size_t draw = 0; draw < points; ++draw) {
    for (std::size_t rejections = 0;; ++rejections) {
      if (rejections >= kStarvationLimit) {
        throw SamplingStarvation("no admissible vertex after 10^6 draws on " + shape.name() + " for " + spec.str());
      }
      Point y = shape.sample_one(rng);
      const bool repeat = std::any_of(verts.begin(), verts.end(), [&](const Point& v) { return !distinct(v, y); });
      if (repeat) break;  // coincident draws merge into one atom
      if (admissible(y)) {
        verts.push_back(std::move(y));
        break;
      }
    }
  }
  std::vector<double> weights = dirichlet_weights(verts.size(), rng);
  return {make_thickening_point(Measure(std::move(verts), std::move(weights)), spec), std::move(witness)};
}

namespace {

struct Outcome {
  enum Kind { Pass, Violation, Ambiguous, Starved };
  Kind kind = Pass;
  double margin = -kInf;
};

struct Tally {
  std::size_t violations = 0;
  std::size_t ambiguous = 0;
  std::size_t starved = 0;
  double worst = -kInf;
};

// value <= bound, failing only beyond max(eps, 1e-9 |bound|). Strict
// inequalities cannot be certified inside the band below the bound.
Outcome judge(double value, double bound, bool strict, const Tolerances& tol) {
  Outcome o;
  o.margin = value - bound;
  if (value - bound > std::max(tol.geo, 1e-9 * std::abs(bound))) {
    o.kind = Outcome::Violation;
  } else if (strict && value >= bound - tol.geo * std::abs(bound)) {
    o.kind = Outcome::Ambiguous;
  }
  return o;
}

Outcome judge_abs(double value, double bound, double slack) {
  Outcome o;
  o.margin = value - bound;
  if (value - bound > slack) o.kind = Outcome::Violation;
  return o;
}

template <class Kernel>
LemmaReport run_cell(LemmaReport rep, const CampaignOptions& opts, Kernel&& kernel) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t trials = rep.trials;
  const std::size_t workers = std::min(worker_count(opts.threads), std::max<std::size_t>(trials, 1));
  std::atomic<std::size_t> next{0};
  std::vector<Tally> tallies(workers);
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](std::size_t w) {
    try {
      Tally& tally = tallies[w];
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= trials) break;
        Rng rng = stream_rng(rep.seed, i);
        Outcome o;
        try {
          o = kernel(rng);
        } catch (const AmbiguousPredicate&) {
          o.kind = Outcome::Ambiguous;
        } catch (const SamplingStarvation&) {
          o.kind = Outcome::Starved;
        } catch (const MedialAxisProximity&) {
          o.kind = Outcome::Violation;
          o.margin = kInf;
        } catch (const SimplexViolation&) {
          o.kind = Outcome::Violation;
          o.margin = kInf;
        }
        switch (o.kind) {
          case Outcome::Violation:
            ++tally.violations;
            break;
          case Outcome::Ambiguous:
            ++tally.ambiguous;
            break;
          case Outcome::Starved:
            ++tally.starved;
            break;
          case Outcome::Pass:
            break;
        }
        if (o.kind == Outcome::Pass || o.kind == Outcome::Violation || o.kind == Outcome::Ambiguous) {
          tally.worst = std::max(tally.worst, o.margin);
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  rep.worst_margin = -kInf;
  for (const Tally& t : tallies) {
    rep.violations += t.violations;
    rep.ambiguous += t.ambiguous;
    rep.starved += t.starved;
    rep.worst_margin = std::max(rep.worst_margin, t.worst);
  }
  rep.wall_time_ms =
      opts.timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() : 0.0;
  return rep;
}

LemmaReport base_report(LemmaId id, const Shape& shape, double r, std::size_t k, std::size_t trials,
                        std::uint64_t seed, bool strict) {
  LemmaReport rep;
  rep.lemma = id;
  rep.shape = shape.descriptor();
  rep.r = r;
  rep.k = k;
  rep.trials = trials;
  rep.seed = seed;
  rep.strict = strict;
  return rep;
}

void require_scale(const Shape& shape, double r, const CampaignOptions& opts) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("lemma campaign: r must be positive");
  if (!opts.allow_unsafe_scale && !(r < shape.reach() * (1.0 - 1e-3))) {
    throw InvalidArgument("lemma campaign: r = " + format_real(r) + " is not below reach " +
                          format_real(shape.reach()) + " * (1 - 1e-3)");
  }
}

// Number of atoms for one trial: simplex dimension uniform in 1..k.
std::size_t draw_points(std::size_t k, Rng& rng) { return k == 0 ? 1 : 2 + static_cast<std::size_t>(rng() % k); }

Point random_direction(std::size_t dim, Rng& rng) {
  for (;;) {
    std::vector<double> v(dim);
    double s = 0.0;
    for (double& c : v) {
      c = standard_normal(rng);
      s += c * c;
    }
    if (s < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (double& c : v) c *= inv;
    return Point(std::move(v));
  }
}

// Shape sample pushed off by a random vector of length `len`.
Point offset_point(const Shape& shape, double len, Rng& rng) {
  Point s = shape.sample_one(rng);
  return s + len * random_direction(shape.ambient_dim(), rng);
}

std::uint64_t aux_seed(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed ^ splitmix64(tag)); }

std::shared_ptr<const std::vector<Point>> witness_set(const Shape& shape, std::size_t count, std::uint64_t seed) {
  return std::make_shared<const std::vector<Point>>(shape.sample(std::max<std::size_t>(count, 1), aux_seed(seed, 0x77)));
}

ComplexSpec make_spec(const Shape& shape, Flavor flavor, double scale, const CampaignOptions& opts,
                      std::uint64_t seed) {
  auto sp = std::make_shared<const Shape>(shape);
  std::shared_ptr<const std::vector<Point>> w;
  if (flavor == Flavor::CechIntrinsic) w = witness_set(shape, opts.witnesses, seed);
  return ComplexSpec(flavor, scale, opts.strict, sp, w, opts.tol);
}

// Small multiplicative jitter of the weights; the support is unchanged so
// the result stays in the same thickening.
ThickeningPoint jitter_weights(const ThickeningPoint& tp, Rng& rng) {
  std::vector<double> w = tp.measure().weights();
  double total = 0.0;
  for (double& x : w) {
    x *= std::exp(0.2 * standard_normal(rng));
    total += x;
  }
  for (double& x : w) x /= total;
  return make_thickening_point(Measure(tp.measure().support(), std::move(w)), tp.spec());
}

}  // namespace

LemmaReport check_convex_lemma(const Shape& shape, std::size_t k, std::size_t trials, std::uint64_t seed,
                               const CampaignOptions& opts) {
  const std::size_t dim = shape.ambient_dim();
  const double spread = std::max(1.0, shape.reach());
  return run_cell(base_report(LemmaId::Convex, shape, 0.0, k, trials, seed, false), opts, [&](Rng& rng) {
    const std::size_t n = k + 1;
    std::vector<Point> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(shape.sample_one(rng));
    const std::vector<double> w = dirichlet_weights(n, rng);
    const Point y = convex_combination(xs, w);
    Point anchor = shape.sample_one(rng);
    anchor += (spread * uniform01(rng)) * random_direction(dim, rng);
    if (rng() % 2 == 0) {
      // Half-space {<z - a, u> > 0}: y outside forces some x_i outside.
      const Point u = random_direction(dim, rng);
      const HalfSpace h(anchor, u);
      double lowest = kInf;
      for (const Point& x : xs) lowest = std::min(lowest, dot(x - h.anchor(), u));
      return judge(lowest, dot(y - h.anchor(), u), false, opts.tol);
    }
    // Ball around the anchor: y outside forces some x_i outside.
    double farthest = 0.0;
    for (const Point& x : xs) farthest = std::max(farthest, distance(x, anchor));
    return judge(distance(y, anchor), farthest, false, opts.tol);
  });
}

LemmaReport check_vr_tub_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials, std::uint64_t seed,
                               const CampaignOptions& opts) {
  require_scale(shape, r, opts);
  const ComplexSpec spec = make_spec(shape, Flavor::VietorisRips, r, opts, seed);
  return run_cell(base_report(LemmaId::VrTub, shape, r, k, trials, seed, opts.strict), opts, [&](Rng& rng) {
    const auto s = sample_thickening_point(spec, draw_points(k, rng), rng);
    return judge(shape.distance(linear_projection_f(s.tp)), r, spec.strict, opts.tol);
  });
}

LemmaReport check_vr_simplex_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                   std::uint64_t seed, const CampaignOptions& opts) {
  require_scale(shape, r, opts);
  const ComplexSpec spec = make_spec(shape, Flavor::VietorisRips, r, opts, seed);
  return run_cell(base_report(LemmaId::VrSimplex, shape, r, k, trials, seed, opts.strict), opts, [&](Rng& rng) {
    const auto s = sample_thickening_point(spec, draw_points(k, rng), rng);
    const Point p = shape.project(linear_projection_f(s.tp), opts.tol);
    double worst = 0.0;
    for (const Point& x : s.tp.measure().support()) worst = std::max(worst, distance(x, p));
    return judge(worst, r, spec.strict, opts.tol);
  });
}

LemmaReport check_cech_radius_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                    std::uint64_t seed, const CampaignOptions& opts) {
  require_scale(shape, r, opts);
  const ComplexSpec spec = make_spec(shape, Flavor::CechAmbient, 2.0 * r, opts, seed);
  return run_cell(base_report(LemmaId::CechRadius, shape, r, k, trials, seed, opts.strict), opts, [&](Rng& rng) {
    const auto s = sample_thickening_point(spec, draw_points(k, rng), rng);
    const Point x = linear_projection_f(s.tp);
    double nearest = kInf;
    for (const Point& v : s.tp.measure().support()) nearest = std::min(nearest, distance(x, v));
    return judge(nearest, r, spec.strict, opts.tol);
  });
}

LemmaReport check_cech_tub_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                 std::uint64_t seed, const CampaignOptions& opts) {
  require_scale(shape, r, opts);
  const ComplexSpec spec = make_spec(shape, Flavor::CechAmbient, 2.0 * r, opts, seed);
  return run_cell(base_report(LemmaId::CechTub, shape, r, k, trials, seed, opts.strict), opts, [&](Rng& rng) {
    const auto s = sample_thickening_point(spec, draw_points(k, rng), rng);
    return judge(shape.distance(linear_projection_f(s.tp)), r, spec.strict, opts.tol);
  });
}

LemmaReport check_cech_simplex_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                     std::uint64_t seed, Flavor flavor, const CampaignOptions& opts) {
  require_scale(shape, r, opts);
  if (flavor == Flavor::VietorisRips) throw InvalidArgument("check_cech_simplex_lemma: flavor must be a Cech flavor");
  const ComplexSpec spec = make_spec(shape, flavor, 2.0 * r, opts, seed);
  const LemmaId id = flavor == Flavor::CechAmbient ? LemmaId::CechSimplexAmbient : LemmaId::CechSimplexIntrinsic;
  return run_cell(base_report(id, shape, r, k, trials, seed, opts.strict), opts, [&](Rng& rng) {
    const auto s = sample_thickening_point(spec, draw_points(k, rng), rng);
    const Point p = shape.project(linear_projection_f(s.tp), opts.tol);
    std::vector<Point> aug = s.tp.measure().support();
    aug.push_back(p);
    if (flavor == Flavor::CechAmbient) return judge(min_enclosing_ball(aug).radius, r, spec.strict, opts.tol);

    // Smallest covering radius over centres on the shape: the original
    // witness, the witness set, the vertices, p, and the projected centre.
    double best = kInf;
    auto cover = [&](const Point& c) {
      double far = 0.0;
      for (const Point& v : aug) {
        far = std::max(far, distance(v, c));
        if (far >= best) return;
      }
      best = far;
    };
    cover(*s.witness);
    for (const Point& v : aug) cover(v);
    for (const Point& w : *spec.witnesses) cover(w);
    try {
      cover(shape.project(min_enclosing_ball(aug).center, opts.tol));
    } catch (const MedialAxisProximity&) {
    }
    return judge(best, r, spec.strict, opts.tol);
  });
}

LemmaReport check_empty_ball(const Shape& shape, std::size_t trials, std::uint64_t seed,
                             const CampaignOptions& opts) {
  const double tau = shape.reach();
  const std::vector<Point> dense = shape.sample(std::max<std::size_t>(opts.dense, 1), aux_seed(seed, 0xd5));
  return run_cell(base_report(LemmaId::EmptyBall, shape, tau, 0, trials, seed, false), opts, [&](Rng& rng) {
    // x in Tub_tau minus X.
    Point x = offset_point(shape, 0.999 * tau * (1.0 - uniform01(rng)), rng);
    for (std::size_t tries = 0; shape.distance(x) <= 1e-12 * tau; ++tries) {
      if (tries >= kStarvationLimit) throw SamplingStarvation("no off-shape tube point");
      x = offset_point(shape, 0.999 * tau * (1.0 - uniform01(rng)), rng);
    }
    const Point p = shape.project(x, opts.tol);
    const Point dir = x - p;
    const Point c = p + (tau / norm(dir)) * dir;
    double nearest = kInf;
    for (const Point& s : dense) nearest = std::min(nearest, squared_distance(c, s));
    return judge_abs(tau, std::sqrt(nearest), opts.empty_ball_tol);
  });
}

LemmaReport check_federer(const Shape& shape, double r, std::size_t trials, std::uint64_t seed,
                          const CampaignOptions& opts) {
  require_scale(shape, r, opts);
  const double tau = shape.reach();
  const std::size_t dim = shape.ambient_dim();
  return run_cell(base_report(LemmaId::FedererLipschitz, shape, r, 0, trials, seed, false), opts, [&](Rng& rng) {
    const Point x = offset_point(shape, r * uniform01(rng), rng);
    const double dx = shape.distance(x);
    for (std::size_t tries = 0;; ++tries) {
      if (tries >= kStarvationLimit) throw SamplingStarvation("no partner point in Tub_r");
      const double len = tau * std::pow(10.0, -3.0 + 3.0 * uniform01(rng));
      const Point y = x + len * random_direction(dim, rng);
      const double dy = shape.distance(y);
      if (!(dy < r) || !(dx < r)) continue;
      const double rho = std::max(dx, dy);
      const double factor = tau / (tau - rho);
      const double moved = distance(shape.project(x, opts.tol), shape.project(y, opts.tol));
      const double bound = factor * distance(x, y);
      Outcome o;
      o.margin = moved - bound;
      if (moved > bound * (1.0 + 1e-9)) o.kind = Outcome::Violation;
      return o;
    }
  });
}

LemmaReport check_f_lipschitz(const ComplexSpec& spec, std::size_t k, std::size_t trials, std::uint64_t seed,
                              const CampaignOptions& opts) {
  const Shape& shape = require_shape(spec);
  return run_cell(base_report(LemmaId::FLipschitz, shape, spec.scale, k, trials, seed, spec.strict), opts,
                  [&](Rng& rng) {
                    const auto a = sample_thickening_point(spec, draw_points(k, rng), rng);
                    const ThickeningPoint b = rng() % 2 == 0
                                                  ? sample_thickening_point(spec, draw_points(k, rng), rng).tp
                                                  : jitter_weights(a.tp, rng);
                    const double moved = distance(linear_projection_f(a.tp), linear_projection_f(b));
                    return judge_abs(moved, thickening_distance(a.tp, b), 1e-9);
                  });
}

LemmaReport check_homotopy_contract(const ComplexSpec& spec, std::size_t k, std::size_t trials,
                                    std::uint64_t seed, const CampaignOptions& opts) {
  const Shape& shape = require_shape(spec);
  const double tau = shape.reach();
  const double rho = tube_radius(spec);
  constexpr std::array<double, 5> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  return run_cell(
      base_report(LemmaId::HomotopyContract, shape, spec.scale, k, trials, seed, spec.strict), opts, [&](Rng& rng) {
        const ThickeningPoint a = sample_thickening_point(spec, draw_points(k, rng), rng).tp;
        const ThickeningPoint b = jitter_weights(a, rng);
        std::vector<ThickeningPoint> ha;
        std::vector<ThickeningPoint> hb;
        for (double t : grid) {
          ha.push_back(homotopy_H(a, t));
          hb.push_back(homotopy_H(b, t));
        }
        Outcome o;
        auto check = [&](double lhs, double bound, double slack) {
          o.margin = std::max(o.margin, lhs - bound);
          if (lhs - bound > slack) o.kind = Outcome::Violation;
        };
        check(thickening_distance(ha.back(), a), 0.0, 1e-10);
        check(thickening_distance(ha.front(), inclusion_iota(retract(a), spec)), 0.0, 1e-10);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          for (std::size_t j = i + 1; j < grid.size(); ++j) {
            check(thickening_distance(ha[i], ha[j]), (grid[j] - grid[i]) * spec.scale, 1e-9);
          }
        }
        const double dab = thickening_distance(a, b);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double factor = 1.0 + (1.0 - grid[i]) * tau / (tau - rho);
          check(thickening_distance(ha[i], hb[i]), factor * dab, 1e-6);
        }
        return o;
      });
}

}  // namespace thicken
