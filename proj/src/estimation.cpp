#include "tgd/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fit_internal.hpp"
#include "optimize.hpp"

namespace tgd {

namespace {

constexpr int kScanSegments = 1000;

double clamp_box(double x, double lo, double hi) {
  return std::min(std::max(x, lo), hi);
}

double logit(double p) { return std::log(p / (1.0 - p)); }
double expit(double s) { return 1.0 / (1.0 + std::exp(-s)); }

TgdParams clamp_params(double q, double a, bool* hit = nullptr) {
  const double qc = clamp_box(q, kBoxEps, 1.0 - kBoxEps);
  const double ac = clamp_box(a, -1.0 + kBoxEps, 1.0 - kBoxEps);
  if (hit) *hit = (qc != q) || (ac != a);
  return TgdParams{qc, ac};
}

// model values of the first two raw moments
double moment1_model(double q, double a) {
  return (q * (1.0 - a) + q * q) / (1.0 - q * q);
}
double moment2_model(double q, double a) {
  const double omq2 = 1.0 - q * q;
  return q * (std::pow(1.0 + q, 3) - a * (q * (3.0 * q + 2.0) + 1.0)) /
         (omq2 * omq2);
}

}  // namespace

std::string to_string(FitMethod m) {
  switch (m) {
    case FitMethod::Proportion: return "proportion";
    case FitMethod::Quantile: return "quantile";
    case FitMethod::Moment: return "moment";
    case FitMethod::MomentMin: return "moment_min";
    case FitMethod::MLE: return "mle";
    case FitMethod::EM: return "em";
  }
  return "?";
}

std::array<double, 3> InfoMatrix::inverse() const {
  if (!positive_definite())
    throw SingularInfoError("information matrix is not positive definite");
  const double d = det();
  return {aa / d, -qa / d, qq / d};
}

// ---------------------------------------------------------------- proportions

PointEstimate solve_proportions(double p0, double p1) {
  if (!(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0))
    throw NoSolutionError("proportions must lie in (0, 1)");
  // The p0 equation is linear in alpha: p0 = (1-q)(1 + alpha q), so
  // alpha(q) = (p0/(1-q) - 1)/q; substitute into the p1 equation and scan
  // for roots in q.
  auto alpha_of = [&](double q) { return (p0 / (1.0 - q) - 1.0) / q; };
  auto g = [&](double q) {
    const double a = alpha_of(q);
    return (1.0 - a) * q * (1.0 - q) + a * q * q * (1.0 - q * q) - p1;
  };
  const auto roots =
      detail::scan_roots(g, kBoxEps, 1.0 - kBoxEps, kScanSegments, 1e-14);
  for (double q : roots) {
    const double a = alpha_of(q);
    if (a > -1.0 + kBoxEps && a < 1.0 - kBoxEps) {
      PointEstimate est;
      est.params = TgdParams{q, a};
      est.residual = std::hypot(pmf(est.params, 0) - p0, pmf(est.params, 1) - p1);
      return est;
    }
  }
  throw NoSolutionError("no interior (q, alpha) reproduces the observed (p0, p1)");
}

PointEstimate estimate_proportions(const FreqTable& data) {
  if (data.count_at(0) == 0 || data.count_at(1) == 0)
    throw MissingCellsError("method of proportions needs observed 0s and 1s");
  return solve_proportions(data.proportion_at(0), data.proportion_at(1));
}

// ------------------------------------------------------------------ quantiles

PointEstimate solve_quantiles(std::int64_t t1, double gamma1, std::int64_t t2,
                              double gamma2) {
  if (t1 >= t2) throw NoSolutionError("quantile points must satisfy t1 < t2");
  if (gamma1 == gamma2)
    throw DegenerateQuantilesError("equal cdf values at t1 and t2");
  if (!(gamma1 > 0.0 && gamma1 < 1.0 && gamma2 > 0.0 && gamma2 < 1.0) ||
      gamma1 > gamma2)
    throw NoSolutionError("cdf values must be increasing inside (0, 1)");
  // gamma = 1 + (alpha-1) s - alpha s^2 with s = q^{t+1} is linear in alpha.
  auto alpha_of = [&](double q) {
    const double s = std::pow(q, static_cast<double>(t1 + 1));
    return (gamma1 - 1.0 + s) / (s - s * s);
  };
  auto g = [&](double q) {
    const double a = alpha_of(q);
    const double s = std::pow(q, static_cast<double>(t2 + 1));
    return 1.0 + (a - 1.0) * s - a * s * s - gamma2;
  };
  const auto roots =
      detail::scan_roots(g, kBoxEps, 1.0 - kBoxEps, kScanSegments, 1e-14);
  for (double q : roots) {
    const double a = alpha_of(q);
    if (a > -1.0 + kBoxEps && a < 1.0 - kBoxEps) {
      PointEstimate est;
      est.params = TgdParams{q, a};
      est.residual = std::hypot(cdf(est.params, t1) - gamma1,
                                cdf(est.params, t2) - gamma2);
      return est;
    }
  }
  throw NoSolutionError("no interior (q, alpha) matches the quantile equations");
}

PointEstimate estimate_quantiles(const FreqTable& data, std::int64_t t1,
                                 std::int64_t t2) {
  return solve_quantiles(t1, data.ecdf(t1), t2, data.ecdf(t2));
}

// -------------------------------------------------------------------- moments

PointEstimate solve_moments(double m1, double m2, MomentVariant variant) {
  if (!(m1 > 0.0) || !(m2 > m1 * m1))
    throw NoSolutionError("moments need m1 > 0 and m2 > m1^2");
  // m1 equation solved for alpha: alpha(q) = (q + q^2 - m1 (1-q^2)) / q
  auto alpha_of = [&](double q) {
    return (q + q * q - m1 * (1.0 - q * q)) / q;
  };

  if (variant == MomentVariant::Solve) {
    auto g = [&](double q) { return moment2_model(q, alpha_of(q)) - m2; };
    const auto roots =
        detail::scan_roots(g, kBoxEps, 1.0 - kBoxEps, kScanSegments, 1e-14);
    // prefer an interior root; otherwise clamp the nearest one and flag it
    const double* chosen = nullptr;
    for (const double& q : roots) {
      const double a = alpha_of(q);
      if (a > -1.0 + kBoxEps && a < 1.0 - kBoxEps) {
        chosen = &q;
        break;
      }
    }
    if (chosen) {
      PointEstimate est;
      est.params = TgdParams{*chosen, alpha_of(*chosen)};
      est.residual = std::hypot(moment1_model(est.params.q, est.params.alpha) - m1,
                                moment2_model(est.params.q, est.params.alpha) - m2);
      return est;
    }
    if (!roots.empty()) {
      PointEstimate est;
      est.params = clamp_params(roots.front(), alpha_of(roots.front()));
      est.boundary = true;
      est.residual = std::hypot(moment1_model(est.params.q, est.params.alpha) - m1,
                                moment2_model(est.params.q, est.params.alpha) - m2);
      return est;
    }
    throw NoSolutionError("moment equations have no root for these (m1, m2)");
  }

  // Minimize variant: least squares on the two moment deviations over the
  // open box, searched on (logit q, atanh alpha) with numeric gradients.
  auto fg = [&](const std::array<double, 2>& x,
                std::array<double, 2>& grad) {
    auto value = [&](const std::array<double, 2>& xx) {
      const double q = expit(xx[0]);
      const double a = std::tanh(xx[1]);
      const double d1 = moment1_model(q, a) - m1;
      const double d2 = moment2_model(q, a) - m2;
      return d1 * d1 + d2 * d2;
    };
    const double h = 1e-7;
    for (int i = 0; i < 2; ++i) {
      std::array<double, 2> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      grad[i] = (value(xp) - value(xm)) / (2.0 * h);
    }
    return value(x);
  };
  const std::array<double, 2> lo = {logit(kBoxEps), std::atanh(-1.0 + kBoxEps)};
  const std::array<double, 2> hi = {logit(1.0 - kBoxEps), std::atanh(1.0 - kBoxEps)};
  detail::MinimizeResult best;
  for (const auto& [q0, a0] : {std::pair{m1 / (1.0 + m1), 0.0},
                               std::pair{0.25, -0.5}, std::pair{0.5, 0.0},
                               std::pair{0.75, 0.5}, std::pair{0.75, -0.5}}) {
    const std::array<double, 2> x0 = {logit(clamp_box(q0, kBoxEps, 1.0 - kBoxEps)),
                                      std::atanh(clamp_box(a0, -0.999, 0.999))};
    const auto r = detail::bfgs2(fg, x0, lo, hi, 1e-8, 500);
    if (r.f < best.f) best = r;
  }
  PointEstimate est;
  bool hit = false;
  est.params = clamp_params(expit(best.x[0]), std::tanh(best.x[1]), &hit);
  est.boundary = hit ||
                 std::abs(est.params.q - kBoxEps) < kBoundaryTol ||
                 std::abs(est.params.q - (1.0 - kBoxEps)) < kBoundaryTol ||
                 std::abs(std::abs(est.params.alpha) - (1.0 - kBoxEps)) < kBoundaryTol;
  est.residual = std::sqrt(best.f);
  return est;
}

PointEstimate estimate_moments(const FreqTable& data, MomentVariant variant) {
  return solve_moments(data.mean(), data.raw_moment2(), variant);
}

namespace detail {

// first root of the moment equations with q interior, alpha unrestricted
std::optional<std::pair<double, double>> moment_root_raw(const FreqTable& data) {
  const double m1 = data.mean();
  const double m2 = data.raw_moment2();
  if (!(m1 > 0.0) || !(m2 > m1 * m1)) return std::nullopt;
  auto alpha_of = [&](double q) {
    return (q + q * q - m1 * (1.0 - q * q)) / q;
  };
  auto g = [&](double q) { return moment2_model(q, alpha_of(q)) - m2; };
  const auto roots = scan_roots(g, kBoxEps, 1.0 - kBoxEps, kScanSegments, 1e-14);
  if (roots.empty()) return std::nullopt;
  // prefer an interior-alpha root when one exists
  for (double q : roots) {
    const double a = alpha_of(q);
    if (a > -1.0 && a < 1.0) return std::pair{q, a};
  }
  return std::pair{roots.front(), alpha_of(roots.front())};
}

}  // namespace detail

// ----------------------------------------------------------------- likelihood

double loglik(const TgdParams& p, const FreqTable& data) {
  p.validate();
  return detail::loglik_raw(p.q, p.alpha, data);
}

std::array<double, 2> score(const TgdParams& p, const FreqTable& data) {
  p.validate();
  return detail::score_raw(p.q, p.alpha, data);
}

InfoMatrix observed_info(const TgdParams& p, const FreqTable& data) {
  p.validate();
  return detail::info_raw(p.q, p.alpha, data);
}

// ------------------------------------------------------------------------ MLE

namespace detail {

CoreFit maximize_loglik(const FreqTable& data, bool constrain_alpha,
                        const MleOptions& options, double max_step) {
  // search space: x0 = logit q; x1 = atanh alpha (constrained) or alpha itself
  const double abound = std::atanh(1.0 - kBoxEps);
  const std::array<double, 2> lo = {logit(kBoxEps),
                                    constrain_alpha ? -abound : -40.0};
  const std::array<double, 2> hi = {logit(1.0 - kBoxEps),
                                    constrain_alpha ? abound : 40.0};
  auto to_alpha = [&](double x) { return constrain_alpha ? std::tanh(x) : x; };
  auto from_alpha = [&](double a) {
    return constrain_alpha ? std::atanh(clamp_box(a, -1.0 + kBoxEps, 1.0 - kBoxEps)) : a;
  };

  auto fg = [&](const std::array<double, 2>& x, std::array<double, 2>& grad) {
    const double q = expit(x[0]);
    const double a = to_alpha(x[1]);
    const double ll = loglik_raw(q, a, data);
    if (!std::isfinite(ll)) {
      grad = {0.0, 0.0};
      return std::numeric_limits<double>::infinity();
    }
    const auto s = score_raw(q, a, data);
    grad[0] = -s[0] * q * (1.0 - q);
    grad[1] = -s[1] * (constrain_alpha ? (1.0 - a * a) : 1.0);
    return -ll;
  };

  std::vector<std::pair<double, double>> starts;
  if (options.init) {
    starts.emplace_back(options.init->q, options.init->alpha);
  } else {
    try {
      const PointEstimate me = estimate_moments(data, MomentVariant::Solve);
      starts.emplace_back(me.params.q, me.params.alpha);
    } catch (const EstimationError&) {
      // moment system infeasible; the grid below covers the box
    }
    for (double q0 : {0.2, 0.5, 0.8})
      for (double a0 : {-0.5, 0.0, 0.5}) starts.emplace_back(q0, a0);
  }

  detail::MinimizeResult best;
  int total_iters = 0;
  for (const auto& [q0, a0] : starts) {
    const std::array<double, 2> x0 = {
        logit(clamp_box(q0, kBoxEps, 1.0 - kBoxEps)),
        from_alpha(clamp_box(a0, -1.0 + kBoxEps, 1.0 - kBoxEps))};
    const auto r = detail::bfgs2(fg, x0, lo, hi, options.grad_tol,
                                 options.max_iter, max_step);
    total_iters += r.iterations;
    if (r.f < best.f) best = r;
  }
  if (!std::isfinite(best.f))
    throw ConvergenceError("likelihood not finite at any start");

  double q = expit(best.x[0]);
  double a = to_alpha(best.x[1]);
  double ll = -best.f;

  // guarded Newton polish in the original coordinates
  for (int it = 0; it < 8; ++it) {
    const auto s = score_raw(q, a, data);
    if (std::max(std::abs(s[0]), std::abs(s[1])) < 1e-11) break;
    const InfoMatrix I = info_raw(q, a, data);
    if (!I.positive_definite()) break;
    const double d = I.det();
    double dq = (I.aa * s[0] - I.qa * s[1]) / d;
    double da = (-I.qa * s[0] + I.qq * s[1]) / d;
    bool improved = false;
    for (int h = 0; h < 10; ++h) {
      const double qn = clamp_box(q + dq, kBoxEps, 1.0 - kBoxEps);
      double an = a + da;
      if (constrain_alpha) an = clamp_box(an, -1.0 + kBoxEps, 1.0 - kBoxEps);
      const double lln = loglik_raw(qn, an, data);
      if (std::isfinite(lln) && lln >= ll - 1e-12) {
        q = qn;
        a = an;
        ll = lln;
        improved = true;
        break;
      }
      dq *= 0.5;
      da *= 0.5;
    }
    if (!improved) break;
  }

  const auto s = score_raw(q, a, data);
  CoreFit fit;
  fit.q = q;
  fit.alpha = a;
  fit.loglik = ll;
  fit.gnorm = std::max(std::abs(s[0] * q * (1.0 - q)),
                       std::abs(s[1] * (constrain_alpha ? (1.0 - a * a) : 1.0)));
  fit.iterations = total_iters;
  fit.converged = fit.gnorm < options.grad_tol;
  fit.boundary = q < kBoxEps + kBoundaryTol || q > 1.0 - kBoxEps - kBoundaryTol ||
                 (constrain_alpha && std::abs(a) > 1.0 - kBoxEps - kBoundaryTol);
  return fit;
}

CoreFit study_mle(const FreqTable& data) {
  std::vector<std::pair<double, double>> starts;
  if (const auto root = moment_root_raw(data)) {
    // only sane inits: a far-out moment root is already off the ridge
    if (std::abs(root->second) < 4.0) starts.push_back(*root);
  }
  const double m1 = data.mean();
  starts.emplace_back(m1 / (1.0 + m1), 0.0);
  for (double q0 : {0.2, 0.5, 0.8})
    for (double a0 : {-0.5, 0.0, 0.5}) starts.emplace_back(q0, a0);
  // near-boundary modes (the minimum/maximum limiting laws) sit at higher q
  starts.emplace_back(0.85, 0.95);
  starts.emplace_back(0.85, -0.95);

  // Best stationary point across starts.  The unbounded ridge (q -> 1,
  // alpha -> infinity) never passes the stationarity check and is dropped
  // here, unlike a plain best-likelihood pick.
  CoreFit best;
  bool found = false;
  for (const auto& [q0, a0] : starts) {
    MleOptions options;
    options.init = TgdParams{clamp_box(q0, kBoxEps, 1.0 - kBoxEps),
                             clamp_box(a0, -1.0 + kBoxEps, 1.0 - kBoxEps)};
    CoreFit fit;
    try {
      // short steps keep each ascent inside its basin
      fit = maximize_loglik(data, false, options, 0.25);
    } catch (const EstimationError&) {
      continue;
    }
    if (fit.converged && std::abs(fit.alpha) < 4.0 &&
        (!found || fit.loglik > best.loglik)) {
      best = fit;
      found = true;
    }
  }
  if (!found)
    throw ConvergenceError("study MLE: no stationary point from any start");
  return best;
}

}  // namespace detail

FitResult mle(const FreqTable& data, const MleOptions& options) {
  if (data.entries().size() < 2)
    throw ConvergenceError("need at least two distinct values to fit");
  const detail::CoreFit core = detail::maximize_loglik(data, true, options);
  if (!core.converged && !core.boundary)
    throw ConvergenceError("MLE did not converge (gradient norm " +
                           std::to_string(core.gnorm) + ")");
  FitResult res;
  res.params = TgdParams{core.q, core.alpha};
  res.loglik = core.loglik;
  res.aic = -2.0 * core.loglik + 4.0;
  res.method = FitMethod::MLE;
  res.converged = core.converged;
  res.iterations = core.iterations;
  res.boundary = core.boundary;
  const InfoMatrix I = observed_info(res.params, data);
  if (I.positive_definite()) {
    const auto v = I.inverse();
    res.se_q = std::sqrt(v[0]);
    res.se_alpha = std::sqrt(v[2]);
  }
  return res;
}

// ------------------------------------------------------------------------- EM

double em_posterior(const TgdParams& p, std::int64_t y) {
  p.validate();
  if (y < 0) throw std::domain_error("em_posterior: y must be >= 0");
  if (p.alpha >= 1.0) return 1.0;
  if (p.alpha <= -1.0) return 0.0;
  const double qy = std::pow(p.q, static_cast<double>(y));
  const double num = (1.0 + p.alpha) * (1.0 - p.q * p.q) * qy * qy;
  const double other =
      (1.0 - p.alpha) * (1.0 - p.q) * qy * (2.0 - (1.0 + p.q) * qy);
  return num / (num + other);
}

namespace {

// complete-data score in q with latent indicators replaced by posteriors
double em_q_score(double q, const FreqTable& data,
                  const std::vector<double>& w) {
  double s = 0.0;
  std::size_t i = 0;
  for (const FreqEntry& e : data.entries()) {
    const double y = static_cast<double>(e.value);
    const double c = static_cast<double>(e.count);
    const double wi = w[i++];
    const double qy = std::pow(q, y);
    const double qym1 = e.value >= 1 ? std::pow(q, y - 1.0) : 0.0;
    const double B = (y * qym1 + (y + 1.0) * qy) / (2.0 - qy * (1.0 + q));
    s += c * (wi * (-2.0 * q / (1.0 - q * q) + 2.0 * y / q) +
              (1.0 - wi) * (y / q - 1.0 / (1.0 - q) - B));
  }
  return s;
}

}  // namespace

EmResult em_fit(const FreqTable& data, const TgdParams& init, double tol,
                int max_iter, bool keep_trace) {
  init.validate();
  double q = clamp_box(init.q, kBoxEps, 1.0 - kBoxEps);
  double a = clamp_box(init.alpha, -1.0 + kBoxEps, 1.0 - kBoxEps);
  const double n = static_cast<double>(data.total());

  EmResult result;
  std::vector<double> w(data.entries().size());
  bool converged = false;
  int iter = 0;
  double ll_prev = -std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (; iter < max_iter; ++iter) {
    // E-step
    std::size_t i = 0;
    double wsum = 0.0;
    const TgdParams cur{q, a};
    for (const FreqEntry& e : data.entries()) {
      w[i] = em_posterior(cur, e.value);
      wsum += static_cast<double>(e.count) * w[i];
      ++i;
    }
    // M-step
    const double a_next = 2.0 * wsum / n - 1.0;
    auto g = [&](double qq) { return em_q_score(qq, data, w); };
    // try a bracket around the previous q first; the root moves slowly
    double lo = std::max(kBoxEps, q - 0.1);
    double hi = std::min(1.0 - kBoxEps, q + 0.1);
    double glo = g(lo);
    double ghi = g(hi);
    if ((glo < 0.0) == (ghi < 0.0)) {
      lo = kBoxEps;
      hi = 1.0 - kBoxEps;
      glo = g(lo);
      ghi = g(hi);
      if ((glo < 0.0) == (ghi < 0.0))
        throw BracketError("EM M-step: complete-data score has no sign change");
    }
    const double q_next = detail::find_root(g, lo, hi, glo, ghi, 1e-12);

    const double dq = std::abs(q_next - q);
    const double da = std::abs(a_next - a);
    q = q_next;
    a = clamp_box(a_next, -1.0 + kBoxEps, 1.0 - kBoxEps);

    if (keep_trace) {
      EmState state;
      state.params = TgdParams{q, a};
      state.posteriors = w;
      state.loglik = detail::loglik_raw(q, a, data);
      result.trace.push_back(std::move(state));
    }

    if (std::max(dq, da) < tol) {
      converged = true;
      ++iter;
      break;
    }
    // When the alpha update crawls along a box edge the parameter-change
    // criterion never fires even though the likelihood has settled; exit on
    // a sustained likelihood stall there.
    if (std::abs(a) > 1.0 - 1e-3) {
      const double ll_now = detail::loglik_raw(q, a, data);
      if (std::abs(ll_now - ll_prev) < 1e-11 * (1.0 + std::abs(ll_now))) {
        if (++stalled >= 3) {
          converged = true;
          ++iter;
          break;
        }
      } else {
        stalled = 0;
      }
      ll_prev = ll_now;
    }
  }

  FitResult& fit = result.fit;
  fit.params = TgdParams{q, a};
  fit.loglik = detail::loglik_raw(q, a, data);
  fit.aic = -2.0 * fit.loglik + 4.0;
  fit.method = FitMethod::EM;
  fit.converged = converged;
  fit.iterations = iter;
  fit.boundary = q < kBoxEps + kBoundaryTol || q > 1.0 - kBoxEps - kBoundaryTol ||
                 std::abs(a) > 1.0 - kBoxEps - kBoundaryTol;
  try {
    const auto se = louis_se(fit.params, data);
    fit.se_q = se.first;
    fit.se_alpha = se.second;
  } catch (const SingularInfoError&) {
    // left unset; the caller sees the missing SEs
  }
  return result;
}

EmResult em_fit(const FreqTable& data, double tol, int max_iter,
                bool keep_trace) {
  TgdParams init{std::max(data.mean() / (1.0 + data.mean()), kBoxEps), 0.0};
  try {
    const PointEstimate me = estimate_moments(data, MomentVariant::Solve);
    if (!me.boundary) init = me.params;
  } catch (const EstimationError&) {
  }
  return em_fit(data, init, tol, max_iter, keep_trace);
}

// ---------------------------------------------------------------------- Louis

InfoMatrix LouisMatrices::observed() const {
  return InfoMatrix{complete.qq - missing.qq, complete.qa - missing.qa,
                    complete.aa - missing.aa};
}

LouisMatrices louis_matrices(const TgdParams& p, const FreqTable& data) {
  p.validate();
  const double q = p.q;
  const double a = p.alpha;
  double d_aa = 0.0, d_qq = 0.0;
  double m_aa = 0.0, m_qa = 0.0, m_qq = 0.0;
  const double ca = 1.0 / (1.0 + a) + 1.0 / (1.0 - a);
  for (const FreqEntry& e : data.entries()) {
    const double y = static_cast<double>(e.value);
    const double c = static_cast<double>(e.count);
    const double w = em_posterior(p, e.value);
    const double v = w * (1.0 - w);
    const double qy = std::pow(q, y);
    const double qym1 = e.value >= 1 ? std::pow(q, y - 1.0) : 0.0;
    const double qym2 = e.value >= 2 ? std::pow(q, y - 2.0) : 0.0;
    const double den = 2.0 - (1.0 + q) * qy;

    d_aa += c * (w / ((1.0 + a) * (1.0 + a)) + (1.0 - w) / ((1.0 - a) * (1.0 - a)));
    const double t_min = 2.0 * (1.0 + q * q) / ((1.0 - q * q) * (1.0 - q * q)) +
                         2.0 * y / (q * q);
    // q^{y-1} (q y + q + y), finite at y = 0 where it equals 1
    const double u = e.value >= 1 ? qym1 * (q * y + q + y) : 1.0;
    const double t_max = y / (q * q) + u * u / (den * den) +
                         ((y - 1.0) * y * qym2 + y * (y + 1.0) * qym1) / den +
                         1.0 / ((1.0 - q) * (1.0 - q));
    d_qq += c * (w * t_min + (1.0 - w) * t_max);

    const double cq = y / q - 2.0 * q / (1.0 - q * q) + 1.0 / (1.0 - q) +
                      (y * qym1 + (y + 1.0) * qy) / den;
    m_aa += c * ca * ca * v;
    m_qa += c * ca * cq * v;
    m_qq += c * cq * cq * v;
  }
  LouisMatrices lm;
  lm.complete = InfoMatrix{d_qq, 0.0, d_aa};
  lm.missing = InfoMatrix{m_qq, m_qa, m_aa};
  return lm;
}

std::pair<double, double> louis_se(const TgdParams& p, const FreqTable& data) {
  const InfoMatrix I = louis_matrices(p, data).observed();
  const auto v = I.inverse();
  return {std::sqrt(v[0]), std::sqrt(v[2])};
}

}  // namespace tgd
