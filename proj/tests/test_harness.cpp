#include <doctest.h>

#include <set>
#include <sstream>

#include "thicken/errors.hpp"
#include "thicken/harness.hpp"

using namespace thicken;

TEST_SUITE("harness") {
  TEST_CASE("config parsing") {
    const auto cfg = CampaignConfig::parse(
        "# campaign\n"
        "shape=ellipse a=2 b=1\n"
        "flavor=vr, cech-ambient\n"
        "strict=1\n"
        "r=0.45,0.3\n"
        "k=5\n"
        "trials=10000\n"
        "seed=7\n"
        "lemmas=VrSimplex,Convex\n"
        "timing=0\n"
        "output=out.csv\n");
    CHECK(cfg.shape == "ellipse a=2 b=1");
    CHECK(cfg.flavors == std::vector<Flavor>{Flavor::VietorisRips, Flavor::CechAmbient});
    CHECK(cfg.strictness == std::vector<bool>{true});
    CHECK(cfg.r == std::vector<double>{0.45, 0.3});
    CHECK(cfg.k == 5);
    CHECK(cfg.trials == 10000);
    CHECK(cfg.seed == 7);
    CHECK(cfg.lemmas == std::vector<LemmaId>{LemmaId::VrSimplex, LemmaId::Convex});
    CHECK_FALSE(cfg.timing);
    CHECK(cfg.output == "out.csv");
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_AS(CampaignConfig::parse("colour=red\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::parse("trials=5\ntrials=6\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::parse("trials=-5\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::parse("trials\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::parse("shape=blob\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::parse("flavor=alpha\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::parse("r=abc\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::parse("strict=maybe\n"), ConfigError);
    CHECK_THROWS_AS(CampaignConfig::load("/nonexistent/config"), ConfigError);
  }

  TEST_CASE("scales at or above the reach need tightness mode") {
    auto cfg = CampaignConfig::parse("shape=circle R=1\nr=1.2\ntrials=10\nlemmas=VrSimplex\n");
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    cfg.tightness = true;
    CHECK_NOTHROW(run_campaign(cfg));
  }

  TEST_CASE("zero trials skip") {
    const auto res = run_campaign(CampaignConfig::parse("trials=0\n"));
    CHECK(res.verdict == Verdict::Skip);
    CHECK(res.rows.empty());
  }

  TEST_CASE("default circle campaign covers the nine suites") {
    auto cfg = CampaignConfig::parse("trials=100\nwitnesses=200\ndense=1000\ntiming=0\n");
    const auto res = run_campaign(cfg);
    CHECK(res.verdict == Verdict::Pass);
    std::set<std::string> ids;
    for (const auto& row : res.rows) ids.insert(row[0]);
    CHECK(ids.size() == 9);
    // Six strictness-aware suites in two variants, three without.
    CHECK(res.rows.size() == 15);
  }

  TEST_CASE("campaign output is independent of the worker count") {
    auto cfg = CampaignConfig::parse("shape=torus R=3 rho=1\nr=0.9\ntrials=200\nwitnesses=200\ndense=1000\ntiming=0\n");
    cfg.threads = 1;
    std::ostringstream a;
    write_csv(a, run_campaign(cfg));
    cfg.threads = 3;
    std::ostringstream b;
    write_csv(b, run_campaign(cfg));
    CHECK(a.str() == b.str());
  }

  TEST_CASE("json lines mirror the csv rows") {
    ExperimentResult res;
    res.columns = {"name", "value", "count"};
    res.rows = {{"a,b", "0.5", "3"}, {"c", "inf", "18446744073709551615"}};
    std::ostringstream j;
    write_json_lines(j, res);
    CHECK(j.str() == "{\"name\":\"a,b\",\"value\":0.5,\"count\":3}\n"
                     "{\"name\":\"c\",\"value\":\"inf\",\"count\":18446744073709551615}\n");
    std::ostringstream c;
    write_csv(c, res);
    CHECK(c.str() == "name,value,count\n\"a,b\",0.5,3\nc,inf,18446744073709551615\n");
  }

  TEST_CASE("every experiment states the claim it checks") {
    CHECK(experiment_registry().size() >= 2);
    for (const auto& e : experiment_registry()) {
      CAPTURE(e.id);
      CHECK_FALSE(e.id.empty());
      CHECK(e.description.size() > 40);
      CHECK(static_cast<bool>(e.run));
      CHECK(&find_experiment(e.id) == &e);
    }
    CHECK_THROWS_AS(find_experiment("nope"), ConfigError);
  }

  TEST_CASE("S0 tightness facts") {
    const auto res = s0_tightness_experiment();
    CHECK(res.verdict == Verdict::Pass);
    REQUIRE(res.rows.size() >= 3);
    CHECK(res.rows[0][0] == "a");
    CHECK(res.rows[1][0] == "b");
    for (const auto& row : res.rows) CHECK(row.back() == "1");
  }
}
