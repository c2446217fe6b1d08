#ifndef TGD_SIMULATION_HPP
#define TGD_SIMULATION_HPP

#include <string>
#include <vector>

#include "tgd/estimation.hpp"
#include "tgd/inference.hpp"
#include "tgd/random.hpp"

namespace tgd {

// Monte-Carlo study of estimator bias/SE.  Per replicate one sample is
// drawn and fitted by every requested method, so MLE and EM see identical
// data.  Replicate seeds derive from (seed, cell index, replicate index);
// results are bitwise reproducible and independent of threading.
struct BiasStudyConfig {
  std::vector<double> q_grid;
  std::vector<double> alpha_grid;
  std::vector<int> n_grid;
  int replications = 1000;
  RngSeed seed{1};
  bool with_mle = true;
  bool with_em = true;
  int threads = 0;  // 0 = hardware concurrency
};

struct BiasCell {
  double q = 0.0;
  double alpha = 0.0;
  int n = 0;
  FitMethod method = FitMethod::MLE;
  int replications = 0;
  int failures = 0;  // excluded from the averages below
  double bias_q = 0.0;
  double bias_alpha = 0.0;
  double se_q = 0.0;      // average reported (asymptotic) standard error
  double se_alpha = 0.0;
  double mse_q = 0.0;
  double mse_alpha = 0.0;
};

struct BiasStudyResult {
  BiasStudyConfig config;
  std::vector<BiasCell> cells;
};

BiasStudyResult run_bias_study(const BiasStudyConfig& config);

// Monte-Carlo power of the three alpha-tests at a grid of alternatives.
struct PowerStudyConfig {
  std::vector<double> q_grid;
  std::vector<double> alpha_grid;  // effect sizes; 0 measures the size
  std::vector<int> n_grid;
  int replications = 1000;
  double level = 0.05;
  RngSeed seed{1};
  // The power study standardizes the score with the closed-form Fisher
  // information of the geometric null; see score_test for the alternative.
  ScoreInfo score_info = ScoreInfo::Expected;
  int threads = 0;
};

struct PowerCell {
  double q = 0.0;
  double alpha = 0.0;
  int n = 0;
  int replications = 0;
  int failures = 0;
  double power_lrt = 0.0;
  double power_score = 0.0;
  double power_wald = 0.0;
};

struct PowerStudyResult {
  PowerStudyConfig config;
  std::vector<PowerCell> cells;
};

PowerStudyResult run_power_study(const PowerStudyConfig& config);

// Monotonicity verdicts across a study: |bias| and se against n, power
// against n and against |alpha|.  "flat" when nothing moves, otherwise the
// expected direction or "violation" when a step exceeds the slack.
struct TrendLine {
  std::string family;
  std::string metric;
  std::string verdict;
  double worst_step = 0.0;  // largest move against the expected direction
};

struct TrendReport {
  double slack = 0.03;
  std::vector<TrendLine> lines;
  bool all_ok() const;
};

TrendReport trend_report(const BiasStudyResult& result, double slack = 0.03);
TrendReport trend_report(const PowerStudyResult& result, double slack = 0.03);

}  // namespace tgd

#endif
