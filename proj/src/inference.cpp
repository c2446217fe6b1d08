#include "tgd/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fit_internal.hpp"

namespace tgd {

double chi2_sf(double x, int df) {
  if (x < 0.0) throw std::domain_error("chi2_sf: x must be >= 0");
  if (df == 1) return std::erfc(std::sqrt(0.5 * x));
  if (df == 2) return std::exp(-0.5 * x);
  throw std::invalid_argument("chi2_sf: only df = 1 and df = 2 are supported");
}

std::string to_string(TestKind k) {
  switch (k) {
    case TestKind::LRT: return "lrt";
    case TestKind::Score: return "score";
    case TestKind::Wald: return "wald";
  }
  return "?";
}

namespace {

double geometric_mle_q(const FreqTable& data) {
  const double m1 = data.mean();
  return m1 / (1.0 + m1);
}

double geometric_loglik(const FreqTable& data, double q) {
  return static_cast<double>(data.total()) * std::log1p(-q) +
         static_cast<double>(data.sum_values()) * std::log(q);
}

TestResult make_result(TestKind kind, double statistic, double null_q,
                       std::optional<TgdParams> alt) {
  TestResult r;
  r.method = kind;
  r.statistic = statistic;
  r.df = 1;
  r.p_value = chi2_sf(statistic, 1);
  r.null_q = null_q;
  r.alt_fit = alt;
  return r;
}

}  // namespace

InfoMatrix expected_info_null(double q, double n) {
  // Entries of E[-d2 l] per observation for the geometric(q) null:
  //   qq: 1/(q (1-q)^2),  q-alpha: 1/(1-q^2),  alpha-alpha: q/(1+q+q^2)
  return InfoMatrix{n / (q * (1.0 - q) * (1.0 - q)), n / (1.0 - q * q),
                    n * q / (1.0 + q + q * q)};
}

TestResult lrt(const FreqTable& data, const FitResult& alt) {
  const double q0 = geometric_mle_q(data);
  const double ll0 = geometric_loglik(data, q0);
  const double stat = std::max(0.0, 2.0 * (alt.loglik - ll0));
  return make_result(TestKind::LRT, stat, q0, alt.params);
}

FitResult null_anchored_mle(const FreqTable& data) {
  MleOptions options;
  options.init = TgdParams{std::clamp(geometric_mle_q(data), 1e-5, 1.0 - 1e-5), 0.0};
  return mle(data, options);
}

TestResult lrt(const FreqTable& data) { return lrt(data, null_anchored_mle(data)); }

TestResult score_test(const FreqTable& data, ScoreInfo info) {
  const double q0 = geometric_mle_q(data);
  // dl/dq vanishes at the geometric MLE, so only the alpha component of the
  // score survives; the quadratic form is kept general anyway.
  const auto u = detail::score_raw(q0, 0.0, data);
  const InfoMatrix I = info == ScoreInfo::Observed
                           ? detail::info_raw(q0, 0.0, data)
                           : expected_info_null(q0, static_cast<double>(data.total()));
  if (!I.positive_definite())
    throw SingularInfoError("score test: information at the null is singular");
  const auto v = I.inverse();
  const double stat =
      u[0] * (v[0] * u[0] + v[1] * u[1]) + u[1] * (v[1] * u[0] + v[2] * u[1]);
  return make_result(TestKind::Score, std::max(0.0, stat), q0, std::nullopt);
}

TestResult wald_test(const FreqTable& data, const FitResult& alt) {
  const InfoMatrix I = observed_info(alt.params, data);
  const auto v = I.inverse();
  const double var_alpha = v[2];
  const double a = alt.params.alpha;
  return make_result(TestKind::Wald, a * a / var_alpha, geometric_mle_q(data),
                     alt.params);
}

TestResult wald_test(const FreqTable& data) {
  return wald_test(data, null_anchored_mle(data));
}

}  // namespace tgd
