#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "thicken/complexes.hpp"
#include "thicken/retraction.hpp"

namespace thicken {

enum class Verdict { Pass, Fail, Skip, Warn };
std::string_view verdict_name(Verdict v);

// Flat key=value configuration, one key per line, '#' starts a comment.
//
//   shape=ellipse a=2 b=1      shape descriptor
//   flavor=vr,cech-ambient     suites to run (default: all three flavors)
//   strict=both                0, 1 or both
//   r=0.45,0.3                 scale grid (default: 0.9 * reach)
//   k=5 trials=10000 seed=42   one key per line
//   lemmas=VrSimplex,Convex    subset of suites (default: the nine lemmas)
//   witnesses=1000 dense=10000 threads=4 timing=0
//   mode=tightness             allow r >= reach
//   output=report.csv
struct CampaignConfig {
  std::string shape = "circle R=1";
  std::vector<Flavor> flavors = {Flavor::VietorisRips, Flavor::CechAmbient, Flavor::CechIntrinsic};
  std::vector<bool> strictness = {false, true};
  std::vector<double> r;
  std::size_t k = 3;
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  std::string output;
  bool tightness = false;
  std::size_t witnesses = 1000;
  std::size_t dense = 10000;
  std::size_t threads = 0;
  bool timing = true;
  std::vector<LemmaId> lemmas = {std::begin(kLemmaSuites), std::end(kLemmaSuites)};

  // Throws ConfigError on unknown or repeated keys and malformed values.
  static CampaignConfig parse(std::string_view text);
  static CampaignConfig load(const std::string& path);
};

struct ExperimentResult {
  std::string id;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Verdict verdict = Verdict::Skip;
};

// One row per (lemma, r, strictness) cell. PASS iff no cell has
// violations; starved cells give WARN; zero trials give SKIP. Throws
// ConfigError if some r is not below the reach outside tightness mode.
ExperimentResult run_campaign(const CampaignConfig& config);

ExperimentResult s0_tightness_experiment();
ExperimentResult reach_validation_experiment();

struct ExperimentInfo {
  std::string_view id;
  std::string_view description;  // the claim the experiment checks
  std::function<ExperimentResult()> run;
};
const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo& find_experiment(std::string_view id);

void write_csv(std::ostream& out, const ExperimentResult& result);
// One JSON object per row, keyed by column name.
void write_json_lines(std::ostream& out, const ExperimentResult& result);

}  // namespace thicken
