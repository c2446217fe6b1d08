#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "tgd/report.hpp"
#include "tgd/simulation.hpp"

using namespace tgd;

TEST_CASE("derived seeds are distinct within a cell") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t rep = 0; rep < 5000; ++rep)
    seen.insert(derive_seed(RngSeed{1234}, 3, rep).value);
  CHECK(seen.size() == 5000);
  CHECK(derive_seed(RngSeed{1}, 0, 0).value != derive_seed(RngSeed{2}, 0, 0).value);
  CHECK(derive_seed(RngSeed{1}, 0, 5).value != derive_seed(RngSeed{1}, 1, 5).value);
}

TEST_CASE("bias study is reproducible and thread-count invariant") {
  BiasStudyConfig config;
  config.q_grid = {0.5};
  config.alpha_grid = {-0.3};
  config.n_grid = {50};
  config.replications = 60;
  config.seed = RngSeed{777};

  config.threads = 1;
  const BiasStudyResult serial = run_bias_study(config);
  config.threads = 4;
  const BiasStudyResult parallel = run_bias_study(config);
  REQUIRE(serial.cells.size() == parallel.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    CHECK(serial.cells[i].bias_q == parallel.cells[i].bias_q);
    CHECK(serial.cells[i].bias_alpha == parallel.cells[i].bias_alpha);
    CHECK(serial.cells[i].se_alpha == parallel.cells[i].se_alpha);
    CHECK(serial.cells[i].failures == parallel.cells[i].failures);
  }
  const BiasStudyResult again = run_bias_study(config);
  CHECK(again.cells[0].bias_alpha == parallel.cells[0].bias_alpha);
}

TEST_CASE("bias study config validation") {
  BiasStudyConfig config;
  config.q_grid = {};
  CHECK_THROWS_AS(run_bias_study(config), std::invalid_argument);
  config.q_grid = {1.5};
  config.alpha_grid = {0.0};
  config.n_grid = {25};
  CHECK_THROWS_AS(run_bias_study(config), std::domain_error);
}

TEST_CASE("near-population sample sizes give negligible bias") {
  BiasStudyConfig config;
  config.q_grid = {0.5};
  config.alpha_grid = {-0.4};
  config.n_grid = {1000000};
  config.replications = 3;
  config.seed = RngSeed{31337};
  config.with_em = false;
  const BiasStudyResult result = run_bias_study(config);
  REQUIRE(result.cells.size() == 1);
  CHECK(result.cells[0].failures == 0);
  CHECK(std::abs(result.cells[0].bias_q) < 0.01);
  CHECK(std::abs(result.cells[0].bias_alpha) < 0.01);
}

TEST_CASE("power study reproducibility and size at the null") {
  PowerStudyConfig config;
  config.q_grid = {0.6};
  config.alpha_grid = {0.0};
  config.n_grid = {500};
  config.replications = 200;
  config.seed = RngSeed{20240601};
  const PowerStudyResult a = run_power_study(config);
  const PowerStudyResult b = run_power_study(config);
  REQUIRE(a.cells.size() == 1);
  CHECK(a.cells[0].power_lrt == b.cells[0].power_lrt);
  CHECK(a.cells[0].power_score == b.cells[0].power_score);
  CHECK(a.cells[0].power_wald == b.cells[0].power_wald);
  // desk-scale size control
  CHECK(std::abs(a.cells[0].power_lrt - 0.05) < 0.05);
  CHECK(std::abs(a.cells[0].power_score - 0.05) < 0.05);
  CHECK(std::abs(a.cells[0].power_wald - 0.05) < 0.05);
}

TEST_CASE("power grows with the effect size") {
  PowerStudyConfig config;
  config.q_grid = {0.6};
  config.alpha_grid = {-0.7, -0.4};
  config.n_grid = {300};
  config.replications = 150;
  config.seed = RngSeed{5150};
  const PowerStudyResult result = run_power_study(config);
  REQUIRE(result.cells.size() == 2);
  CHECK(result.cells[0].power_lrt > result.cells[1].power_lrt - 0.03);
  CHECK(result.cells[0].power_lrt > 0.5);
}

TEST_CASE("trend report on a decreasing family") {
  BiasStudyResult result;
  result.config.q_grid = {0.5};
  result.config.alpha_grid = {-0.3};
  result.config.n_grid = {25, 50, 100};
  for (int i = 0; i < 3; ++i) {
    BiasCell c;
    c.q = 0.5;
    c.alpha = -0.3;
    c.n = result.config.n_grid[i];
    c.method = FitMethod::MLE;
    c.bias_q = 0.03 / (i + 1);
    c.bias_alpha = -0.06 / (i + 1);
    c.se_q = 0.1 / std::sqrt(double(i + 1));
    c.se_alpha = 0.5 / std::sqrt(double(i + 1));
    result.cells.push_back(c);
  }
  const TrendReport report = trend_report(result);
  CHECK(report.all_ok());
  bool saw_se_alpha = false;
  for (const TrendLine& l : report.lines) {
    CHECK(l.verdict != "violation");
    if (l.metric == "se_alpha vs n") {
      saw_se_alpha = true;
      CHECK(l.verdict == "nonincreasing");
    }
  }
  CHECK(saw_se_alpha);
}

TEST_CASE("trend report flags violations and flat inputs") {
  BiasStudyResult result;
  result.config.q_grid = {0.5};
  result.config.alpha_grid = {0.3};
  result.config.n_grid = {25, 50, 100};
  for (int i = 0; i < 3; ++i) {
    BiasCell c;
    c.q = 0.5;
    c.alpha = 0.3;
    c.n = result.config.n_grid[i];
    c.method = FitMethod::EM;
    c.bias_q = 0.01;                      // flat
    c.bias_alpha = 0.02 + 0.04 * i;       // growing beyond the slack
    c.se_q = 0.1;                         // flat
    c.se_alpha = 0.4;                     // flat
    result.cells.push_back(c);
  }
  const TrendReport report = trend_report(result);
  CHECK_FALSE(report.all_ok());
  int flats = 0, violations = 0;
  for (const TrendLine& l : report.lines) {
    if (l.verdict == "flat") ++flats;
    if (l.verdict == "violation") {
      ++violations;
      CHECK(l.metric == "|bias_alpha| vs n");
      CHECK(l.worst_step == doctest::Approx(0.04));
    }
  }
  CHECK(flats == 3);
  CHECK(violations == 1);
}

TEST_CASE("power trend report covers n and effect-size directions") {
  PowerStudyResult result;
  result.config.q_grid = {0.6};
  result.config.alpha_grid = {-0.7, -0.5, -0.3};
  result.config.n_grid = {100, 300, 500};
  for (double a : result.config.alpha_grid) {
    for (int n : result.config.n_grid) {
      PowerCell c;
      c.q = 0.6;
      c.alpha = a;
      c.n = n;
      const double base = std::min(0.95, 0.3 * std::abs(a) * n / 100.0);
      c.power_lrt = base;
      c.power_score = std::min(0.99, base + 0.02);
      c.power_wald = base;
      result.cells.push_back(c);
    }
  }
  const TrendReport report = trend_report(result);
  CHECK(report.all_ok());
  bool saw_vs_alpha = false;
  for (const TrendLine& l : report.lines)
    if (l.metric == "lrt power vs |alpha|") saw_vs_alpha = true;
  CHECK(saw_vs_alpha);
}

TEST_CASE("study emitters produce the documented columns") {
  BiasStudyConfig config;
  config.q_grid = {0.5};
  config.alpha_grid = {-0.3};
  config.n_grid = {40};
  config.replications = 25;
  config.seed = RngSeed{8};
  config.with_em = false;
  const BiasStudyResult result = run_bias_study(config);
  std::ostringstream csv;
  bias_study_csv(result, csv);
  CHECK(csv.str().find("q,alpha,n,method,replications,failures,bias_q,"
                       "bias_alpha,se_q,se_alpha,mse_q,mse_alpha") == 0);
  const std::string json = bias_study_json(result);
  CHECK(json.find("\"study\": \"bias\"") != std::string::npos);
  CHECK(json.find("\"seed\": 8") != std::string::npos);
  CHECK(bias_study_json(result) == json);  // byte-identical on re-emission
}
