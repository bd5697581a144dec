#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thicken/complexes.hpp"
#include "thicken/random.hpp"
#include "thicken/shapes.hpp"
#include "thicken/thickening.hpp"

namespace thicken {

// The nine lemma suites, then two contracts of the maps f and H.
enum class LemmaId {
  Convex,
  VrTub,
  VrSimplex,
  CechRadius,
  CechTub,
  CechSimplexAmbient,
  CechSimplexIntrinsic,
  EmptyBall,
  FedererLipschitz,
  FLipschitz,
  HomotopyContract,
};

inline constexpr LemmaId kLemmaSuites[] = {
    LemmaId::Convex,           LemmaId::VrTub,      LemmaId::VrSimplex,
    LemmaId::CechRadius,       LemmaId::CechTub,    LemmaId::CechSimplexAmbient,
    LemmaId::CechSimplexIntrinsic, LemmaId::EmptyBall, LemmaId::FedererLipschitz,
};

std::string_view lemma_name(LemmaId id);
LemmaId parse_lemma(std::string_view text);
// Whether the suite has distinct strict and non-strict variants.
bool lemma_has_strictness(LemmaId id);

// Outcome of one campaign cell. `violations` counts trials whose inequality
// failed beyond tolerance; `ambiguous` trials hit a predicate band and
// `starved` trials gave up sampling. worst_margin is the largest
// value - bound seen (-inf when no trial produced a value).
struct LemmaReport {
  LemmaId lemma = LemmaId::Convex;
  std::string shape;
  double r = 0.0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t ambiguous = 0;
  std::size_t starved = 0;
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;
  bool strict = false;
};

// Columns: lemma_id,shape,r,k,trials,violations,ambiguous,worst_margin,seed,
// wall_time_ms,strict,starved.
std::string lemma_csv_header();
std::string lemma_csv_row(const LemmaReport& report);

struct CampaignOptions {
  std::size_t threads = 0;  // 0: hardware concurrency; THICKEN_THREADS caps either
  Tolerances tol;
  bool strict = false;
  std::size_t witnesses = 1000;        // intrinsic Cech witness set size
  std::size_t dense = 10000;           // dense sample for the empty-ball check
  double empty_ball_tol = 1e-6;        // absolute
  bool timing = true;                  // false writes wall_time_ms = 0
  bool allow_unsafe_scale = false;     // lift the r < reach guard
};

// Number of workers actually used for a request.
std::size_t worker_count(std::size_t requested);

// project(shape, f(tp)). Requires a shape in the complex spec and a scale below the
// reach (VR: r < tau; Cech at scale 2r: r < tau).
Point retract(const ThickeningPoint& tp);

// Measure t * tp + (1 - t) * delta_p with p = retract(tp), validated against
// tp's spec. SimplexViolation is a counterexample to the simplex lemmas.
ThickeningPoint homotopy_H(const ThickeningPoint& tp, double t);

struct SampledThickening {
  ThickeningPoint tp;
  std::optional<Point> witness;  // intrinsic flavor: the centre used
};

// Random point of the thickening with up to `points` atoms (fewer when draws
// coincide). Vertices are drawn one at a time from the shape and kept only if
// the support stays a simplex; for the intrinsic flavor a witness is chosen
// from spec.witnesses first and vertices are drawn within scale/2 of it.
// Weights are uniform on the probability simplex. Throws SamplingStarvation
// after 10^6 consecutive rejections.
SampledThickening sample_thickening_point(const ComplexSpec& spec, std::size_t points, Rng& rng);

inline constexpr std::size_t kStarvationLimit = 1000000;

LemmaReport check_convex_lemma(const Shape& shape, std::size_t k, std::size_t trials, std::uint64_t seed,
                               const CampaignOptions& opts = {});
LemmaReport check_vr_tub_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials, std::uint64_t seed,
                               const CampaignOptions& opts = {});
LemmaReport check_vr_simplex_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                   std::uint64_t seed, const CampaignOptions& opts = {});
// Cech lemmas sample simplices of the complex at scale 2r.
LemmaReport check_cech_radius_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                    std::uint64_t seed, const CampaignOptions& opts = {});
LemmaReport check_cech_tub_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                 std::uint64_t seed, const CampaignOptions& opts = {});
LemmaReport check_cech_simplex_lemma(const Shape& shape, double r, std::size_t k, std::size_t trials,
                                     std::uint64_t seed, Flavor flavor, const CampaignOptions& opts = {});
LemmaReport check_empty_ball(const Shape& shape, std::size_t trials, std::uint64_t seed,
                             const CampaignOptions& opts = {});
LemmaReport check_federer(const Shape& shape, double r, std::size_t trials, std::uint64_t seed,
                          const CampaignOptions& opts = {});

// ||f(a) - f(b)|| <= d_W(a, b) + 1e-9 over random pairs of the thickening.
LemmaReport check_f_lipschitz(const ComplexSpec& spec, std::size_t k, std::size_t trials, std::uint64_t seed,
                              const CampaignOptions& opts = {});

// Endpoints of H within 1e-10, d_W(H(tp,t), H(tp,s)) <= |t-s| scale + 1e-9
// on t in {0, 1/4, 1/2, 3/4, 1}, H well defined, and the spot check
// d_W(H(a,t), H(b,t)) <= (1 + (1-t) tau/(tau - rho)) d_W(a,b) + 1e-6 with
// rho the tube radius containing the image of f.
LemmaReport check_homotopy_contract(const ComplexSpec& spec, std::size_t k, std::size_t trials,
                                    std::uint64_t seed, const CampaignOptions& opts = {});

}  // namespace thicken
