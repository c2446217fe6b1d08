#ifndef TGD_SRC_OPTIMIZE_HPP
#define TGD_SRC_OPTIMIZE_HPP

// Internal numeric helpers shared by the estimation routines: a safeguarded
// scalar root finder and a small BFGS for two-parameter likelihoods.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace tgd::detail {

// Root of f on a bracket [lo, hi] with f(lo) f(hi) <= 0.  Secant steps
// safeguarded by bisection; converges to |hi - lo| <= xtol.
template <typename F>
double find_root(F&& f, double lo, double hi, double flo, double fhi,
                 double xtol, int max_iter = 200) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  double a = lo, b = hi, fa = flo, fb = fhi;
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    double m = a + 0.5 * (b - a);
    if (std::isfinite(fa) && std::isfinite(fb) && fb != fa) {
      const double s = b - fb * (b - a) / (fb - fa);
      // accept the secant point only when it lands safely inside
      if (s > a + 0.1 * xtol && s < b - 0.1 * xtol) m = s;
    }
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return a + 0.5 * (b - a);
}

template <typename F>
double find_root(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
  return find_root(f, lo, hi, f(lo), f(hi), xtol, max_iter);
}

// Scans [lo, hi] on a uniform grid and refines every sign change.
// Non-finite segment endpoints are skipped.
template <typename F>
std::vector<double> scan_roots(F&& f, double lo, double hi, int segments,
                               double xtol) {
  std::vector<double> roots;
  double x0 = lo, f0 = f(lo);
  for (int i = 1; i <= segments; ++i) {
    const double x1 = lo + (hi - lo) * static_cast<double>(i) / segments;
    const double f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1)) {
      if (f0 == 0.0)
        roots.push_back(x0);
      else if ((f0 < 0.0) != (f1 < 0.0))
        roots.push_back(find_root(f, x0, x1, f0, f1, xtol));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

struct MinimizeResult {
  std::array<double, 2> x{};
  double f = std::numeric_limits<double>::infinity();
  double gnorm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// BFGS with Armijo backtracking on a 2-D objective.  fg(x, g) returns the
// value and fills the gradient; +infinity marks infeasible points (the line
// search backs away from them).  Iterates are clamped to [lo, hi] per
// coordinate.  Convergence is on the max-norm of the gradient.  max_step
// caps the per-iteration move (local searches that must not leave a basin).
inline MinimizeResult bfgs2(
    const std::function<double(const std::array<double, 2>&, std::array<double, 2>&)>& fg,
    std::array<double, 2> x0, const std::array<double, 2>& lo,
    const std::array<double, 2>& hi, double gtol, int max_iter,
    double max_step = 0.0) {
  auto clamp = [&](std::array<double, 2>& x) {
    for (int i = 0; i < 2; ++i) x[i] = std::min(std::max(x[i], lo[i]), hi[i]);
  };
  auto norm_inf = [](const std::array<double, 2>& g) {
    return std::max(std::abs(g[0]), std::abs(g[1]));
  };

  MinimizeResult res;
  std::array<double, 2> x = x0;
  clamp(x);
  std::array<double, 2> g{};
  double f = fg(x, g);
  if (!std::isfinite(f)) {
    res.x = x;
    return res;
  }
  // inverse Hessian approximation
  double h11 = 1.0, h12 = 0.0, h22 = 1.0;

  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    if (norm_inf(g) < gtol) {
      res.converged = true;
      break;
    }
    std::array<double, 2> d = {-(h11 * g[0] + h12 * g[1]),
                               -(h12 * g[0] + h22 * g[1])};
    double slope = d[0] * g[0] + d[1] * g[1];
    if (!(slope < 0.0)) {  // reset to steepest descent
      h11 = h22 = 1.0;
      h12 = 0.0;
      d = {-g[0], -g[1]};
      slope = -(g[0] * g[0] + g[1] * g[1]);
    }
    if (max_step > 0.0) {
      const double dn = std::max(std::abs(d[0]), std::abs(d[1]));
      if (dn > max_step) {
        const double scale = max_step / dn;
        d[0] *= scale;
        d[1] *= scale;
        slope *= scale;
      }
    }

    double step = 1.0;
    std::array<double, 2> xn{}, gn{};
    double fn = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = {x[0] + step * d[0], x[1] + step * d[1]};
      clamp(xn);
      fn = fg(xn, gn);
      if (std::isfinite(fn) && fn <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search exhausted, gradient check decides

    const std::array<double, 2> s = {xn[0] - x[0], xn[1] - x[1]};
    const std::array<double, 2> yv = {gn[0] - g[0], gn[1] - g[1]};
    const double sy = s[0] * yv[0] + s[1] * yv[1];
    if (sy > 1e-14) {
      // BFGS inverse update
      const double hy0 = h11 * yv[0] + h12 * yv[1];
      const double hy1 = h12 * yv[0] + h22 * yv[1];
      const double yhy = yv[0] * hy0 + yv[1] * hy1;
      const double c1 = (sy + yhy) / (sy * sy);
      h11 += c1 * s[0] * s[0] - (hy0 * s[0] + s[0] * hy0) / sy;
      h12 += c1 * s[0] * s[1] - (hy0 * s[1] + s[0] * hy1) / sy;
      h22 += c1 * s[1] * s[1] - (hy1 * s[1] + s[1] * hy1) / sy;
    }
    x = xn;
    f = fn;
    g = gn;
  }

  res.x = x;
  res.f = f;
  res.gnorm = norm_inf(g);
  res.converged = res.gnorm < gtol;
  return res;
}

}  // namespace tgd::detail

#endif
