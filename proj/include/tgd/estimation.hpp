#ifndef TGD_ESTIMATION_HPP
#define TGD_ESTIMATION_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tgd/distribution.hpp"
#include "tgd/freq_table.hpp"

namespace tgd {

// estimation failures; the CLI maps these to exit code 2
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NoSolutionError : public EstimationError {
 public:
  using EstimationError::EstimationError;
};
class MissingCellsError : public EstimationError {
 public:
  using EstimationError::EstimationError;
};
class DegenerateQuantilesError : public EstimationError {
 public:
  using EstimationError::EstimationError;
};
class ConvergenceError : public EstimationError {
 public:
  using EstimationError::EstimationError;
};
class BracketError : public EstimationError {
 public:
  using EstimationError::EstimationError;
};
class SingularInfoError : public EstimationError {
 public:
  using EstimationError::EstimationError;
};

// estimators keep (q, alpha) this far inside the parameter box
inline constexpr double kBoxEps = 1e-6;
// estimates closer than this to a box edge carry the boundary flag
inline constexpr double kBoundaryTol = 1e-4;

enum class FitMethod { Proportion, Quantile, Moment, MomentMin, MLE, EM };

std::string to_string(FitMethod m);

struct FitResult {
  TgdParams params;
  std::optional<double> se_q;      // MLE / EM only
  std::optional<double> se_alpha;  // MLE / EM only
  double loglik = 0.0;
  double aic = 0.0;
  FitMethod method = FitMethod::MLE;
  bool converged = false;
  int iterations = 0;
  bool boundary = false;
};

// closed-form estimate with its equation residual and box-clamp flag
struct PointEstimate {
  TgdParams params;
  double residual = 0.0;
  bool boundary = false;
};

// observed information, ordered (q, alpha)
struct InfoMatrix {
  double qq = 0.0;
  double qa = 0.0;
  double aa = 0.0;

  double det() const { return qq * aa - qa * qa; }
  bool positive_definite() const { return qq > 0.0 && det() > 0.0; }
  // covariance matrix entries; throws SingularInfoError when not pd
  std::array<double, 3> inverse() const;  // {vqq, vqa, vaa}
};

// ---- method of proportions (section on observed 0/1 frequencies) ----
// Solves p0 = (1-a)(1-q) + a(1-q^2), p1 = (1-a)q(1-q) + a q^2(1-q^2).
PointEstimate solve_proportions(double p0, double p1);
PointEstimate estimate_proportions(const FreqTable& data);

// ---- method of sample quantiles ----
// Solves gamma_j = 1 + (a-1) q^{t_j+1} - a q^{2(t_j+1)} for j = 1, 2.
PointEstimate solve_quantiles(std::int64_t t1, double gamma1, std::int64_t t2,
                              double gamma2);
PointEstimate estimate_quantiles(const FreqTable& data, std::int64_t t1,
                                 std::int64_t t2);

// ---- method of moments ----
enum class MomentVariant { Solve, Minimize };
PointEstimate solve_moments(double m1, double m2,
                            MomentVariant variant = MomentVariant::Solve);
PointEstimate estimate_moments(const FreqTable& data,
                               MomentVariant variant = MomentVariant::Solve);

// ---- likelihood machinery ----
double loglik(const TgdParams& p, const FreqTable& data);
// (dl/dq, dl/dalpha)
std::array<double, 2> score(const TgdParams& p, const FreqTable& data);
// negated Hessian of the log-likelihood
InfoMatrix observed_info(const TgdParams& p, const FreqTable& data);

struct MleOptions {
  std::optional<TgdParams> init;  // replaces the default multi-start set
  int max_iter = 500;             // per start
  double grad_tol = 1e-6;         // max-norm in the transformed space
};

// Maximum likelihood over the open box via a quasi-Newton search on
// (logit q, atanh alpha) with analytic gradients, multi-start (moment
// estimate when available plus a fixed 3x3 grid), and a guarded Newton
// polish at the winner.  Standard errors come from the inverse observed
// information.
FitResult mle(const FreqTable& data, const MleOptions& options = {});

// ---- EM algorithm ----
// Posterior probability that the latent component indicator is 1 (the
// "minimum" branch) given an observation y.
double em_posterior(const TgdParams& p, std::int64_t y);

struct EmState {
  TgdParams params;
  std::vector<double> posteriors;  // aligned with data.entries()
  double loglik = 0.0;
};

struct EmResult {
  FitResult fit;
  std::vector<EmState> trace;  // one state per iteration
};

// E-step: posteriors; M-step: alpha from the posterior mean, q as the root
// of the complete-data score (bracketed bisection/secant).  Stops when
// max(|dq|, |dalpha|) < tol.  keep_trace = false skips recording the
// per-iteration states (used in Monte-Carlo loops).
EmResult em_fit(const FreqTable& data, const TgdParams& init,
                double tol = 1e-8, int max_iter = 500, bool keep_trace = true);
// default init: moment estimate, falling back to (m1/(1+m1), 0)
EmResult em_fit(const FreqTable& data, double tol = 1e-8, int max_iter = 500,
                bool keep_trace = true);

// Louis-method observed information at an EM optimum: complete-data
// information minus the conditional variance of the complete-data score.
struct LouisMatrices {
  InfoMatrix complete;  // E(-d2 l_c | y); its (q, alpha) cross term is 0
  InfoMatrix missing;   // V(U_c | y)
  InfoMatrix observed() const;
};
LouisMatrices louis_matrices(const TgdParams& p, const FreqTable& data);
// (se_q, se_alpha) from the inverse of the Louis information
std::pair<double, double> louis_se(const TgdParams& p, const FreqTable& data);

}  // namespace tgd

#endif
