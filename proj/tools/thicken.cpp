// Command-line front end: lemma campaigns, experiments and the single-shot
// primitives. Exit codes: 0 pass, 1 fail, 2 bad input or config, 3 internal.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "thicken/complexes.hpp"
#include "thicken/errors.hpp"
#include "thicken/harness.hpp"
#include "thicken/shapes.hpp"
#include "thicken/text.hpp"
#include "thicken/transport.hpp"

namespace {

using namespace thicken;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

int verdict_exit(Verdict v) { return v == Verdict::Fail ? kExitFail : kExitPass; }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  return in;
}

void emit(const ExperimentResult& result, bool json_lines, const std::string& output) {
  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw ConfigError("cannot write '" + output + "'");
  }
  std::ostream& out = output.empty() ? std::cout : file;
  if (json_lines) {
    write_json_lines(out, result);
  } else {
    write_csv(out, result);
  }
}

Point parse_point_arg(const std::string& text) {
  std::vector<double> coords;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) coords.push_back(parse_real(item, "point coordinate"));
  if (coords.empty()) throw InvalidArgument("empty point");
  return Point(std::move(coords));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric thickenings of sets of positive reach: campaigns, experiments and primitives"};
  app.require_subcommand(1);

  std::string config_path;
  bool json_lines = false;
  std::size_t threads = 0;
  bool threads_set = false;
  bool no_timing = false;
  std::string output;
  auto* verify = app.add_subcommand("verify", "Run the lemma campaigns described by a config file");
  verify->add_option("config", config_path, "key=value config file")->required();
  verify->add_flag("--json-lines", json_lines, "Emit rows as JSON objects instead of CSV");
  verify->add_option("--threads", threads, "Worker threads (0: hardware concurrency)")
      ->each([&](const std::string&) { threads_set = true; });
  verify->add_flag("--no-timing", no_timing, "Write wall_time_ms = 0 for byte-stable output");
  verify->add_option("--output", output, "Write the report here instead of stdout");

  std::string measure_a;
  std::string measure_b;
  auto* wasserstein = app.add_subcommand("wasserstein", "Exact W1 distance and optimal plan between two measures");
  wasserstein->add_option("fileA", measure_a, "one atom per line: weight then coordinates")->required();
  wasserstein->add_option("fileB", measure_b)->required();

  std::string points_path;
  std::string flavor_text = "vr";
  double scale = 0.0;
  bool strict = false;
  std::size_t max_dim = 2;
  auto* skeleton = app.add_subcommand("skeleton", "List the simplices of a complex on a finite point set");
  skeleton->add_option("points-file", points_path, "one point per line")->required();
  skeleton->add_option("--flavor", flavor_text, "vr, cech-ambient or cech-intrinsic");
  skeleton->add_option("--scale", scale, "scale r")->required();
  skeleton->add_flag("--strict", strict, "Use the strict predicate");
  skeleton->add_option("--max-dim", max_dim, "Largest simplex dimension");

  std::string experiment_id;
  bool experiment_json = false;
  auto* experiment = app.add_subcommand("experiment", "Run a registered experiment");
  std::string experiment_help = "one of:";
  for (const auto& e : experiment_registry()) experiment_help += " " + std::string(e.id);
  experiment->add_option("id", experiment_id, experiment_help)->required();
  experiment->add_flag("--json-lines", experiment_json, "Emit rows as JSON objects instead of CSV");

  std::vector<std::string> project_args;
  auto* project = app.add_subcommand("project", "Nearest point of a shape, e.g. `project ellipse a=2 b=1 3,0`");
  project->add_option("args", project_args, "shape descriptor tokens followed by the point")->required()->expected(2, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (verify->parsed()) {
      CampaignConfig cfg = CampaignConfig::load(config_path);
      if (threads_set) cfg.threads = threads;
      if (no_timing) cfg.timing = false;
      if (!output.empty()) cfg.output = output;
      const ExperimentResult result = run_campaign(cfg);
      emit(result, json_lines, cfg.output);
      std::cerr << "verify: " << verdict_name(result.verdict) << " (" << result.rows.size() << " cells)\n";
      return verdict_exit(result.verdict);
    }
    if (wasserstein->parsed()) {
      auto in_a = open_input(measure_a);
      auto in_b = open_input(measure_b);
      const Measure mu = read_measure(in_a);
      const Measure nu = read_measure(in_b);
      write_transport_csv(std::cout, wasserstein1(mu, nu));
      return kExitPass;
    }
    if (skeleton->parsed()) {
      auto in = open_input(points_path);
      const std::vector<Point> points = read_points(in);
      const ComplexSpec spec(parse_flavor(flavor_text), scale, strict);
      write_skeleton(std::cout, enumerate_skeleton(points, spec, max_dim), spec, max_dim);
      return kExitPass;
    }
    if (experiment->parsed()) {
      const ExperimentResult result = find_experiment(experiment_id).run();
      emit(result, experiment_json, "");
      std::cerr << experiment_id << ": " << verdict_name(result.verdict) << '\n';
      return verdict_exit(result.verdict);
    }
    if (project->parsed()) {
      const Point x = parse_point_arg(project_args.back());
      project_args.pop_back();
      const Shape shape = Shape::parse(project_args);
      const Point p = shape.project(x);
      for (std::size_t i = 0; i < p.dim(); ++i) std::cout << 'p' << i << ',';
      std::cout << "distance\n";
      for (double c : p.coords()) std::cout << format_real(c) << ',';
      std::cout << format_real(distance(x, p)) << '\n';
      return kExitPass;
    }
  } catch (const MedialAxisProximity& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
