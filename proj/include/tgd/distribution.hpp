#ifndef TGD_DISTRIBUTION_HPP
#define TGD_DISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include "tgd/random.hpp"

namespace tgd {

// Parameters of the transmuted geometric distribution TGD(q, alpha):
//   p_y = (1-alpha) q^y (1-q) + alpha (1-q^2) q^{2y},   y = 0, 1, ...
// with 0 < q < 1 and -1 <= alpha <= 1.  alpha = 0 is geometric(q),
// alpha = 1 the minimum and alpha = -1 the maximum of two iid geometric(q)
// variables.  Estimators keep alpha inside the open interval; evaluation
// accepts the closed boundary.
struct TgdParams {
  double q = 0.5;
  double alpha = 0.0;

  bool valid() const;
  // throws std::domain_error when invalid
  void validate() const;
};

double pmf(const TgdParams& p, std::int64_t y);
double log_pmf(const TgdParams& p, std::int64_t y);

// survival P(Y >= y); sf(p, 0) = 1
double sf(const TgdParams& p, std::int64_t y);
// cdf P(Y <= y) = 1 - sf(p, y+1); zero for y < 0
double cdf(const TgdParams& p, std::int64_t y);

// smallest y with cdf(y) >= u, for u in [0, 1).  Closed-form inversion of
// the quadratic in t = q^{y+1} followed by a +-1 integer scan against cdf
// to absorb rounding at cell boundaries.
std::int64_t quantile(const TgdParams& p, double u);

// probability generating function, |q^2 z| < 1 and away from the poles
double pgf(const TgdParams& p, double z);

// E[Y(Y-1)...(Y-r+1)], r >= 1
double factorial_moment(const TgdParams& p, int r);

double mean(const TgdParams& p);
// E[Y^2]
double second_raw_moment(const TgdParams& p);
double variance(const TgdParams& p);

// smallest maximizer of the pmf
std::int64_t mode(const TgdParams& p);

// n iid draws by inverse transform; deterministic given the seed
std::vector<std::int64_t> sample(const TgdParams& p, std::size_t n, RngSeed seed);
std::vector<std::int64_t> sample(const TgdParams& p, std::size_t n, Rng& rng);
std::int64_t draw(const TgdParams& p, Rng& rng);

// Draws through the latent two-component construction: X ~ Bernoulli((1+alpha)/2)
// selects the min (X=1) or max (X=0) of two iid geometric(q) draws.
// Distributionally identical to sample(); kept as an independent mechanism.
std::vector<std::int64_t> sample_mixture(const TgdParams& p, std::size_t n, RngSeed seed);
std::vector<std::int64_t> sample_mixture(const TgdParams& p, std::size_t n, Rng& rng);

}  // namespace tgd

#endif
