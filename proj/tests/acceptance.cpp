// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "thicken/complexes.hpp"
#include "thicken/harness.hpp"
#include "thicken/random.hpp"
#include "thicken/retraction.hpp"
#include "thicken/shapes.hpp"
#include "thicken/text.hpp"
#include "thicken/transport.hpp"

using namespace thicken;

namespace {

struct ShapeCase {
  const char* descriptor;
  double r;  // VR scale; Cech complexes are taken at 2r
};

const std::vector<ShapeCase> kShapes = {
    {"circle R=1", 0.9},
    {"ellipse a=2 b=1", 0.45},
    {"sphere n=3 R=1", 0.9},
    {"torus R=3 rho=1", 0.9},
};

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome tally(const std::vector<LemmaReport>& reports) {
  Outcome out;
  std::size_t violations = 0;
  std::size_t trials = 0;
  std::size_t starved = 0;
  double worst = -INFINITY;
  for (const auto& rep : reports) {
    violations += rep.violations;
    trials += rep.trials;
    starved += rep.starved;
    worst = std::max(worst, rep.worst_margin);
    if (rep.violations > 0) {
      out.detail += std::string(lemma_name(rep.lemma)) + " on " + rep.shape + " r=" + format_real(rep.r) +
                    (rep.strict ? " strict" : "") + ": " + std::to_string(rep.violations) + " violations; ";
    }
  }
  out.ok = violations == 0;
  out.detail += std::to_string(reports.size()) + " cells, " + std::to_string(trials) + " trials, " +
                std::to_string(violations) + " violations, " + std::to_string(starved) + " starved, worst margin " +
                format_real(worst);
  return out;
}

CampaignOptions options(bool strict = false) {
  CampaignOptions opts;
  opts.strict = strict;
  opts.witnesses = 1000;
  opts.dense = 10000;
  return opts;
}

Measure random_measure(Rng& rng, std::size_t atoms, std::size_t dim) {
  std::vector<Point> support;
  for (std::size_t i = 0; i < atoms; ++i) {
    std::vector<double> c(dim);
    for (double& x : c) x = standard_normal(rng);
    support.emplace_back(c);
  }
  return Measure(std::move(support), dirichlet_weights(atoms, rng));
}

Outcome transport_exactness() {
  Rng rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t dim = 1 + rng() % 3;
    const Measure mu = random_measure(rng, 1 + rng() % 4, dim);
    const Measure nu = random_measure(rng, 1 + rng() % 4, dim);
    worst = std::max(worst, std::abs(wasserstein1(mu, nu).value - oracle_wasserstein1(mu, nu)));
  }
  return {worst <= 1e-9, "1000 instances, max |simplex - oracle| = " + format_real(worst)};
}

Outcome meb_exactness() {
  Rng rng(1002);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t dim = 2 + t % 2;
    const std::size_t n = 1 + rng() % 8;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> c(dim);
      for (double& x : c) x = 2.0 * uniform01(rng) - 1.0;
      pts.emplace_back(c);
    }
    worst = std::max(worst, std::abs(min_enclosing_ball(pts).radius - oracle::meb_radius(pts)));
  }
  return {worst <= 1e-9, "1000 instances, max |welzl - oracle| = " + format_real(worst)};
}

// The VR simplex campaign on the four shapes, as CSV.
std::string vr_simplex_campaign(std::size_t threads, std::vector<LemmaReport>* reports) {
  std::ostringstream csv;
  for (const auto& s : kShapes) {
    CampaignConfig cfg;
    cfg.shape = s.descriptor;
    cfg.flavors = {Flavor::VietorisRips};
    cfg.r = {s.r};
    cfg.k = 5;
    cfg.trials = 10000;
    cfg.seed = 42;
    cfg.threads = threads;
    cfg.timing = false;
    cfg.lemmas = {LemmaId::VrSimplex};
    const ExperimentResult res = run_campaign(cfg);
    write_csv(csv, res);
    if (reports) {
      for (const auto& row : res.rows) {
        LemmaReport rep;
        rep.lemma = parse_lemma(row[0]);
        rep.shape = row[1];
        rep.r = std::stod(row[2]);
        rep.trials = std::stoul(row[4]);
        rep.violations = std::stoul(row[5]);
        rep.worst_margin = std::stod(row[7]);
        rep.strict = row[10] == "1";
        rep.starved = std::stoul(row[11]);
        reports->push_back(rep);
      }
    }
  }
  return csv.str();
}

Outcome vr_simplex_lemma() {
  std::vector<LemmaReport> reports;
  vr_simplex_campaign(0, &reports);
  return tally(reports);
}

Outcome cech_lemmas() {
  std::vector<LemmaReport> reports;
  for (const auto& s : kShapes) {
    const Shape shape = Shape::parse(s.descriptor);
    const double r = 0.9 * shape.reach();
    for (bool strict : {false, true}) {
      const CampaignOptions opts = options(strict);
      reports.push_back(check_cech_radius_lemma(shape, r, 5, 10000, 43, opts));
      reports.push_back(check_cech_tub_lemma(shape, r, 5, 10000, 43, opts));
      reports.push_back(check_cech_simplex_lemma(shape, r, 5, 10000, 43, Flavor::CechAmbient, opts));
      reports.push_back(check_cech_simplex_lemma(shape, r, 5, 10000, 43, Flavor::CechIntrinsic, opts));
    }
  }
  return tally(reports);
}

Outcome federer_bound() {
  std::vector<LemmaReport> reports;
  for (const auto& s : kShapes) {
    const Shape shape = Shape::parse(s.descriptor);
    reports.push_back(check_federer(shape, 0.5 * shape.reach(), 10000, 44, options()));
  }
  return tally(reports);
}

Outcome empty_ball() {
  std::vector<LemmaReport> reports;
  for (const auto& s : kShapes) {
    CampaignOptions opts = options();
    opts.empty_ball_tol = 1e-6;
    reports.push_back(check_empty_ball(Shape::parse(s.descriptor), 10000, 45, opts));
  }
  return tally(reports);
}

Outcome f_lipschitz() {
  std::vector<LemmaReport> reports;
  for (const auto& s : kShapes) {
    const auto shape = std::make_shared<const Shape>(Shape::parse(s.descriptor));
    const ComplexSpec vr(Flavor::VietorisRips, s.r, false, shape);
    reports.push_back(check_f_lipschitz(vr, 5, 1000, 46, options()));
    const ComplexSpec cech(Flavor::CechAmbient, 2 * s.r, false, shape);
    reports.push_back(check_f_lipschitz(cech, 5, 1000, 46, options()));
  }
  return tally(reports);
}

Outcome homotopy_contract() {
  std::vector<LemmaReport> reports;
  for (const auto& s : kShapes) {
    const auto shape = std::make_shared<const Shape>(Shape::parse(s.descriptor));
    reports.push_back(check_homotopy_contract(ComplexSpec(Flavor::VietorisRips, s.r, false, shape), 5, 1000, 47,
                                              options()));
  }
  return tally(reports);
}

Outcome s0_tightness() {
  const ExperimentResult res = s0_tightness_experiment();
  std::size_t held = 0;
  for (const auto& row : res.rows) held += row.back() == "1";
  return {res.verdict == Verdict::Pass,
          std::to_string(held) + " of " + std::to_string(res.rows.size()) + " facts hold"};
}

Outcome reach_formulas() {
  struct Case {
    const char* descriptor;
    std::size_t density;
    double tolerance;
  };
  Outcome out;
  for (const Case& c : {Case{"circle R=1", 100, 0.01}, Case{"ellipse a=2 b=1", 400, 0.01},
                        Case{"torus R=3 rho=1", 40, 0.05}}) {
    const Shape shape = Shape::parse(c.descriptor);
    const double est = estimate_reach(shape, c.density);
    const double rel = std::abs(est - shape.reach()) / shape.reach();
    out.ok = out.ok && rel <= c.tolerance;
    out.detail += std::string(c.descriptor) + ": " + format_real(est) + " (rel " + format_real(rel) + "); ";
  }
  return out;
}

Outcome determinism() {
  const std::string one = vr_simplex_campaign(1, nullptr);
  const std::string four = vr_simplex_campaign(4, nullptr);
  return {one == four && !one.empty(),
          std::to_string(one.size()) + " bytes at 1 thread vs " + std::to_string(four.size()) + " at 4, " +
              (one == four ? "identical" : "different")};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "transport exactness", 10, transport_exactness},
      {2, "enclosing-ball exactness", 10, meb_exactness},
      {3, "VR simplex lemma campaign", 60, vr_simplex_lemma},
      {4, "Cech radius, tub and simplex campaigns", 120, cech_lemmas},
      {5, "Federer projection bound", 20, federer_bound},
      {6, "empty-ball property", 30, empty_ball},
      {7, "f is 1-Lipschitz", 20, f_lipschitz},
      {8, "homotopy contract", 30, homotopy_contract},
      {9, "S0 tightness", 1, s0_tightness},
      {10, "reach formulas", 60, reach_formulas},
      {11, "determinism across thread counts", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
    const bool pass = out.ok && in_time;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << out.detail << " ["
              << secs << " s" << (c.limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s" : "")
              << (in_time ? "" : ", over time") << "]" << std::endl;
  }
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
