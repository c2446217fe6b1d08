#ifndef TGD_SRC_FIT_INTERNAL_HPP
#define TGD_SRC_FIT_INTERNAL_HPP

// Likelihood core on raw (q, alpha) doubles, without TgdParams validation.
// The simulation harness evaluates these outside the distribution box
// (mirroring an unconstrained optimizer), so alpha is any real for which
// every observed bracket (1-alpha) + alpha (1+q) q^y stays positive.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "tgd/estimation.hpp"
#include "tgd/freq_table.hpp"

namespace tgd::detail {

// first root of the moment equations with q interior, alpha unrestricted
std::optional<std::pair<double, double>> moment_root_raw(const FreqTable& data);

inline double loglik_raw(double q, double a, const FreqTable& data) {
  double ll = static_cast<double>(data.total()) * std::log1p(-q) +
              static_cast<double>(data.sum_values()) * std::log(q);
  for (const FreqEntry& e : data.entries()) {
    const double bracket =
        (1.0 - a) + a * (1.0 + q) * std::pow(q, static_cast<double>(e.value));
    if (bracket <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += static_cast<double>(e.count) * std::log(bracket);
  }
  return ll;
}

inline std::array<double, 2> score_raw(double q, double a,
                                       const FreqTable& data) {
  const double n = static_cast<double>(data.total());
  double dq = -n / (1.0 - q) + static_cast<double>(data.sum_values()) / q;
  double da = 0.0;
  for (const FreqEntry& e : data.entries()) {
    const double y = static_cast<double>(e.value);
    const double c = static_cast<double>(e.count);
    const double qy = std::pow(q, y);
    const double D = (1.0 - a) + a * (1.0 + q) * qy;
    const double Dq =
        a * (qy + (e.value >= 1 ? y * (1.0 + q) * std::pow(q, y - 1.0) : 0.0));
    dq += c * Dq / D;
    da += c * ((1.0 + q) * qy - 1.0) / D;
  }
  return {dq, da};
}

inline InfoMatrix info_raw(double q, double a, const FreqTable& data) {
  const double n = static_cast<double>(data.total());
  double lqq = -n / ((1.0 - q) * (1.0 - q)) -
               static_cast<double>(data.sum_values()) / (q * q);
  double lqa = 0.0;
  double laa = 0.0;
  for (const FreqEntry& e : data.entries()) {
    const double y = static_cast<double>(e.value);
    const double c = static_cast<double>(e.count);
    const double qy = std::pow(q, y);
    const double qym1 = e.value >= 1 ? std::pow(q, y - 1.0) : 0.0;
    const double qym2 = e.value >= 2 ? std::pow(q, y - 2.0) : 0.0;
    const double D = (1.0 - a) + a * (1.0 + q) * qy;
    const double dDda = (1.0 + q) * qy - 1.0;
    const double Dq = a * (qy + y * (1.0 + q) * qym1);
    const double Dqq = a * (2.0 * y * qym1 + (1.0 + q) * y * (y - 1.0) * qym2);
    const double dDqda = qy + y * (1.0 + q) * qym1;
    lqq += c * (Dqq / D - (Dq / D) * (Dq / D));
    lqa += c * (dDqda / D - Dq * dDda / (D * D));
    laa -= c * dDda * dDda / (D * D);
  }
  return InfoMatrix{-lqq, -lqa, -laa};
}

struct CoreFit {
  double q = 0.5;
  double alpha = 0.0;
  double loglik = -std::numeric_limits<double>::infinity();
  double gnorm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  bool boundary = false;
};

// Shared maximizer behind tgd::mle (constrain_alpha = true) and the
// simulation-study estimator (constrain_alpha = false, where alpha ranges
// over the likelihood-feasible reals as in the paper's study).
CoreFit maximize_loglik(const FreqTable& data, bool constrain_alpha,
                        const MleOptions& options, double max_step = 0.0);

// Local maximizer for the bias study with alpha unconstrained.  The fully
// unconstrained likelihood is unbounded (q -> 1 with alpha -> infinity gives
// weights above one on the observed support), so the study follows the
// nearest stationary point reached from a consistent start: the raw moment
// root when it exists, the geometric anchor (m1/(1+m1), 0) otherwise.
// Throws ConvergenceError when neither start reaches a stationary point.
CoreFit study_mle(const FreqTable& data);

}  // namespace tgd::detail

#endif
