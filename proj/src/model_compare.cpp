#include "tgd/model_compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optimize.hpp"

namespace tgd {

namespace {

// digamma by recurrence into the asymptotic region (|error| < 1e-12 for x >= 6)
double digamma(double x) {
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                    inv2 * (1.0 / 240.0 - inv2 / 132.0))));
  return result;
}

constexpr double kLogRMin = -18.0;  // r in [1.5e-8, 3.3e6]
constexpr double kLogRMax = 15.0;

double logit(double p) { return std::log(p / (1.0 - p)); }
double expit(double s) { return 1.0 / (1.0 + std::exp(-s)); }

}  // namespace

GeometricFit fit_geometric(const FreqTable& data) {
  GeometricFit fit;
  const double m1 = data.mean();
  if (m1 <= 0.0) {
    fit.q = 1e-12;
    fit.degenerate = true;
  } else {
    fit.q = m1 / (1.0 + m1);
  }
  fit.loglik = static_cast<double>(data.total()) * std::log1p(-fit.q) +
               static_cast<double>(data.sum_values()) * std::log(fit.q);
  fit.aic = -2.0 * fit.loglik + 2.0;
  return fit;
}

double negbin_loglik(const NegBinParams& params, const FreqTable& data) {
  const double r = params.r;
  const double p = params.p;
  if (!(r > 0.0 && p > 0.0 && p < 1.0))
    throw std::domain_error("negbin_loglik: need r > 0 and 0 < p < 1");
  double ll = 0.0;
  for (const FreqEntry& e : data.entries()) {
    const double y = static_cast<double>(e.value);
    ll += static_cast<double>(e.count) *
          (std::lgamma(y + r) - std::lgamma(r) - std::lgamma(y + 1.0) +
           r * std::log1p(-p) + y * std::log(p));
  }
  return ll;
}

NegBinFit fit_negbin(const FreqTable& data) {
  const double m1 = data.mean();
  const double var = data.variance();

  auto fg = [&](const std::array<double, 2>& x, std::array<double, 2>& grad) {
    const double r = std::exp(x[0]);
    const double p = expit(x[1]);
    double dr = 0.0;
    double dp = 0.0;
    double ll = 0.0;
    for (const FreqEntry& e : data.entries()) {
      const double y = static_cast<double>(e.value);
      const double c = static_cast<double>(e.count);
      ll += c * (std::lgamma(y + r) - std::lgamma(r) - std::lgamma(y + 1.0) +
                 r * std::log1p(-p) + y * std::log(p));
      dr += c * (digamma(y + r) - digamma(r) + std::log1p(-p));
      dp += c * (y / p - r / (1.0 - p));
    }
    grad[0] = -dr * r;             // d/d log r
    grad[1] = -dp * p * (1.0 - p);  // d/d logit p
    return -ll;
  };

  std::vector<NegBinParams> starts;
  if (var > m1 && m1 > 0.0) {
    const double p0 = 1.0 - m1 / var;
    starts.push_back({m1 * (1.0 - p0) / p0, p0});
  }
  starts.push_back({1.0, 0.5});
  starts.push_back({0.5, 0.3});
  starts.push_back({2.0, 0.7});

  const std::array<double, 2> lo = {kLogRMin, logit(1e-9)};
  const std::array<double, 2> hi = {kLogRMax, logit(1.0 - 1e-9)};
  detail::MinimizeResult best;
  int iters = 0;
  for (const NegBinParams& s : starts) {
    const std::array<double, 2> x0 = {
        std::min(std::max(std::log(s.r), kLogRMin), kLogRMax),
        logit(std::min(std::max(s.p, 1e-9), 1.0 - 1e-9))};
    const auto res = detail::bfgs2(fg, x0, lo, hi, 1e-6, 500);
    iters += res.iterations;
    if (res.f < best.f) best = res;
  }
  if (!std::isfinite(best.f))
    throw ConvergenceError("negative binomial likelihood not finite at any start");

  auto grad_at = [&](double r, double p) -> std::array<double, 2> {
    double dr = 0.0, dp = 0.0;
    for (const FreqEntry& e : data.entries()) {
      const double y = static_cast<double>(e.value);
      const double c = static_cast<double>(e.count);
      dr += c * (digamma(y + r) - digamma(r) + std::log1p(-p));
      dp += c * (y / p - r / (1.0 - p));
    }
    return {dr, dp};
  };
  // negated Hessian by central differences of the analytic gradient
  auto info_at = [&](double r, double p) -> std::array<double, 3> {
    const double hr = 1e-6 * std::max(1.0, r);
    const double hp = 1e-7;
    const auto gr1 = grad_at(r + hr, p);
    const auto gr0 = grad_at(r - hr, p);
    const auto gp1 = grad_at(r, p + hp);
    const auto gp0 = grad_at(r, p - hp);
    const double irr = -(gr1[0] - gr0[0]) / (2.0 * hr);
    const double irp = -0.5 * ((gr1[1] - gr0[1]) / (2.0 * hr) +
                               (gp1[0] - gp0[0]) / (2.0 * hp));
    const double ipp = -(gp1[1] - gp0[1]) / (2.0 * hp);
    return {irr, irp, ipp};
  };

  double r = std::exp(best.x[0]);
  double p = expit(best.x[1]);
  double ll = -best.f;
  // Newton polish in the original coordinates
  for (int it = 0; it < 10; ++it) {
    const auto gcur = grad_at(r, p);
    if (std::max(std::abs(gcur[0]), std::abs(gcur[1])) < 1e-10) break;
    const auto I = info_at(r, p);
    const double det = I[0] * I[2] - I[1] * I[1];
    if (!(I[0] > 0.0) || !(det > 0.0)) break;
    double dr = (I[2] * gcur[0] - I[1] * gcur[1]) / det;
    double dp = (-I[1] * gcur[0] + I[0] * gcur[1]) / det;
    bool improved = false;
    for (int h = 0; h < 12; ++h) {
      const double rn = r + dr;
      const double pn = p + dp;
      if (rn > 0.0 && pn > 0.0 && pn < 1.0) {
        const double lln = negbin_loglik({rn, pn}, data);
        if (std::isfinite(lln) && lln >= ll - 1e-12) {
          r = rn;
          p = pn;
          ll = lln;
          improved = true;
          break;
        }
      }
      dr *= 0.5;
      dp *= 0.5;
    }
    if (!improved) break;
  }

  NegBinFit fit;
  fit.params = {r, p};
  fit.loglik = ll;
  fit.aic = -2.0 * ll + 4.0;
  fit.iterations = iters;
  // r this large is Poisson to machine precision; the plateau never yields
  // a vanishing gradient, so treat it as the equidispersed boundary
  fit.boundary = std::log(r) > std::log(1e4) || std::log(r) < kLogRMin + 1e-4;
  const auto g_final = grad_at(r, p);
  const double gnorm = std::max(std::abs(g_final[0] * r),
                                std::abs(g_final[1] * p * (1.0 - p)));
  fit.converged = gnorm < 1e-6;
  if (!fit.converged && !fit.boundary)
    throw ConvergenceError("negative binomial fit did not converge (gradient " +
                           std::to_string(gnorm) + ")");

  if (!fit.boundary) {
    const auto I = info_at(r, p);
    const double det = I[0] * I[2] - I[1] * I[1];
    if (I[0] > 0.0 && det > 0.0) {
      fit.se_r = std::sqrt(I[2] / det);
      fit.se_p = std::sqrt(I[0] / det);
    }
  }
  return fit;
}

ComparisonReport compare(const FreqTable& data, const CompareOptions& options,
                         const std::string& dataset_name) {
  if (!options.tgd_mle && !options.tgd_em && !options.geometric && !options.negbin)
    throw std::invalid_argument("compare: no model requested");

  ComparisonReport report;
  report.dataset = dataset_name;
  report.stats = describe(data);

  std::optional<FitResult> tgd_fit;

  if (options.tgd_mle) {
    ModelRow row;
    row.model = "tgd_mle";
    row.free_parameters = 2;
    try {
      const FitResult f = mle(data);
      tgd_fit = f;
      row.estimates = {{"q", f.params.q}, {"alpha", f.params.alpha}};
      if (f.se_q && f.se_alpha)
        row.std_errors = {{"q", *f.se_q}, {"alpha", *f.se_alpha}};
      row.loglik = f.loglik;
      row.aic = f.aic;
      row.converged = f.converged;
    } catch (const EstimationError& e) {
      row.error = e.what();
    }
    report.models.push_back(std::move(row));
  }

  if (options.tgd_em) {
    ModelRow row;
    row.model = "tgd_em";
    row.free_parameters = 2;
    try {
      const EmResult f = em_fit(data, 1e-8, 2000, false);
      row.estimates = {{"q", f.fit.params.q}, {"alpha", f.fit.params.alpha}};
      if (f.fit.se_q && f.fit.se_alpha)
        row.std_errors = {{"q", *f.fit.se_q}, {"alpha", *f.fit.se_alpha}};
      row.loglik = f.fit.loglik;
      row.aic = f.fit.aic;
      row.converged = f.fit.converged;
      if (!tgd_fit && f.fit.converged) tgd_fit = f.fit;
    } catch (const EstimationError& e) {
      row.error = e.what();
    }
    report.models.push_back(std::move(row));
  }

  if (options.geometric) {
    ModelRow row;
    row.model = "geometric";
    row.free_parameters = 1;
    const GeometricFit f = fit_geometric(data);
    row.estimates = {{"q", f.q}};
    row.loglik = f.loglik;
    row.aic = f.aic;
    row.converged = !f.degenerate;
    report.models.push_back(std::move(row));
  }

  if (options.negbin) {
    ModelRow row;
    row.model = "negbin";
    row.free_parameters = 2;
    try {
      const NegBinFit f = fit_negbin(data);
      row.estimates = {{"r", f.params.r}, {"p", f.params.p}};
      if (f.se_r && f.se_p)
        row.std_errors = {{"r", *f.se_r}, {"p", *f.se_p}};
      row.loglik = f.loglik;
      row.aic = f.aic;
      row.converged = f.converged;
      if (f.boundary) row.error = "boundary: r at its cap (data not overdispersed)";
    } catch (const EstimationError& e) {
      row.error = e.what();
    }
    report.models.push_back(std::move(row));
  }

  if (options.tests) {
    try {
      const FitResult test_fit = null_anchored_mle(data);
      report.tests.push_back(lrt(data, test_fit));
      report.tests.push_back(score_test(data));
      report.tests.push_back(wald_test(data, test_fit));
    } catch (const EstimationError&) {
      // tests need a TGD fit; leave what succeeded
    }
  }

  // flag the smallest AIC among rows that actually fitted
  const ModelRow* best = nullptr;
  for (const ModelRow& row : report.models)
    if (!row.estimates.empty() && (!best || row.aic < best->aic)) best = &row;
  if (best) {
    report.best_model = best->model.rfind("tgd", 0) == 0 ? "tgd" : best->model;
    for (ModelRow& row : report.models) row.best = (&row == best);
  }
  return report;
}

}  // namespace tgd
