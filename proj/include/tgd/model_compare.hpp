#ifndef TGD_MODEL_COMPARE_HPP
#define TGD_MODEL_COMPARE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgd/data.hpp"
#include "tgd/estimation.hpp"
#include "tgd/inference.hpp"

namespace tgd {

struct GeometricFit {
  double q = 0.0;  // closed form m1/(1+m1)
  double loglik = 0.0;
  double aic = 0.0;  // k = 1
  bool degenerate = false;  // all-zero data, q clamped
};

GeometricFit fit_geometric(const FreqTable& data);

// negative binomial with pmf C(y+r-1, y) (1-p)^r p^y, mean r p/(1-p)
struct NegBinParams {
  double r = 1.0;
  double p = 0.5;
};

struct NegBinFit {
  NegBinParams params;
  std::optional<double> se_r;
  std::optional<double> se_p;
  double loglik = 0.0;
  double aic = 0.0;  // k = 2
  bool converged = false;
  bool boundary = false;  // r at its cap (equidispersed data)
  int iterations = 0;
};

double negbin_loglik(const NegBinParams& params, const FreqTable& data);
NegBinFit fit_negbin(const FreqTable& data);

struct CompareOptions {
  bool tgd_mle = true;
  bool tgd_em = true;
  bool geometric = true;
  bool negbin = true;
  bool tests = true;
};

struct ModelRow {
  std::string model;  // tgd_mle, tgd_em, geometric, negbin
  std::vector<std::pair<std::string, double>> estimates;
  std::vector<std::pair<std::string, double>> std_errors;
  double loglik = 0.0;
  double aic = 0.0;
  int free_parameters = 0;
  bool converged = false;
  bool best = false;
  std::string error;  // non-empty when the fit failed
};

struct ComparisonReport {
  std::string dataset;
  DescriptiveStats stats;
  std::vector<ModelRow> models;
  std::vector<TestResult> tests;
  std::string best_model;  // model family with the smallest AIC
};

// Fits the requested models, runs the three alpha-tests, flags the
// minimum-AIC row.  Individual fit failures annotate their row instead of
// aborting the report.
ComparisonReport compare(const FreqTable& data, const CompareOptions& options = {},
                         const std::string& dataset_name = "");

}  // namespace tgd

#endif
