#include "tgd/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tgd {

namespace {

double pow_qy(double q, std::int64_t y) {
  return std::pow(q, static_cast<double>(y));
}

}  // namespace

bool TgdParams::valid() const {
  return std::isfinite(q) && std::isfinite(alpha) && q > 0.0 && q < 1.0 &&
         alpha >= -1.0 && alpha <= 1.0;
}

void TgdParams::validate() const {
  if (!valid())
    throw std::domain_error("TgdParams: need 0 < q < 1 and -1 <= alpha <= 1");
}

double pmf(const TgdParams& p, std::int64_t y) {
  p.validate();
  if (y < 0) return 0.0;
  const double qy = pow_qy(p.q, y);
  return (1.0 - p.alpha) * qy * (1.0 - p.q) +
         p.alpha * (1.0 - p.q * p.q) * qy * qy;
}

double log_pmf(const TgdParams& p, std::int64_t y) {
  p.validate();
  if (y < 0) return -std::numeric_limits<double>::infinity();
  // log p_y = log(1-q) + y log q + log((1-alpha) + alpha (1+q) q^y).
  // The bracket lies in (1 - |alpha| q, 1 + |alpha| q] for |alpha| <= 1,
  // so there is no cancellation; it can only hit 0 in exact arithmetic at
  // the alpha boundaries in the y -> infinity limit.
  const double bracket =
      (1.0 - p.alpha) + p.alpha * (1.0 + p.q) * pow_qy(p.q, y);
  if (bracket <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log1p(-p.q) + static_cast<double>(y) * std::log(p.q) +
         std::log(bracket);
}

double sf(const TgdParams& p, std::int64_t y) {
  p.validate();
  if (y <= 0) return 1.0;
  const double qy = pow_qy(p.q, y);
  return (1.0 - p.alpha) * qy + p.alpha * qy * qy;
}

double cdf(const TgdParams& p, std::int64_t y) {
  p.validate();
  if (y < 0) return 0.0;
  const double t = pow_qy(p.q, y + 1);
  return 1.0 - (1.0 - p.alpha) * t - p.alpha * t * t;
}

std::int64_t quantile(const TgdParams& p, double u) {
  p.validate();
  if (!(u >= 0.0 && u < 1.0))
    throw std::domain_error("quantile: u must lie in [0, 1)");
  // cdf(y) >= u  <=>  q^{y+1} <= t*, the positive root of
  // alpha t^2 + (1-alpha) t - (1-u) = 0.  The conjugate form below is
  // exact at alpha = 0 and free of cancellation for small |alpha|.
  const double oma = 1.0 - p.alpha;
  const double disc = oma * oma + 4.0 * p.alpha * (1.0 - u);
  const double tstar = 2.0 * (1.0 - u) / (oma + std::sqrt(std::max(disc, 0.0)));
  std::int64_t y = 0;
  if (tstar < 1.0) {
    const double raw = std::ceil(std::log(tstar) / std::log(p.q)) - 1.0;
    y = raw > 0.0 ? static_cast<std::int64_t>(raw) : 0;
  }
  // rounding guard
  while (y > 0 && cdf(p, y - 1) >= u) --y;
  while (cdf(p, y) < u) ++y;
  return y;
}

double pgf(const TgdParams& p, double z) {
  p.validate();
  const double q = p.q;
  if (!(std::abs(q * q * z) < 1.0))
    throw std::domain_error("pgf: require |q^2 z| < 1");
  const double d1 = 1.0 - q * z;
  const double d2 = 1.0 - q * q * z;
  if (std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14)
    throw std::domain_error("pgf: z at a pole");
  // combining the two geometric generating functions gives
  // (1-q)(1 + alpha q (1-z) - q^2 z); checked against the series and G(0) = p_0
  return (1.0 - q) * (1.0 + p.alpha * q * (1.0 - z) - q * q * z) / (d1 * d2);
}

double factorial_moment(const TgdParams& p, int r) {
  p.validate();
  if (r < 1) throw std::domain_error("factorial_moment: r >= 1");
  double rfact = 1.0;
  for (int i = 2; i <= r; ++i) rfact *= i;
  const double g1 = p.q / (1.0 - p.q);
  const double g2 = p.q * p.q / (1.0 - p.q * p.q);
  return (1.0 - p.alpha) * rfact * std::pow(g1, r) +
         p.alpha * rfact * std::pow(g2, r);
}

double mean(const TgdParams& p) { return factorial_moment(p, 1); }

double second_raw_moment(const TgdParams& p) {
  return factorial_moment(p, 2) + mean(p);
}

double variance(const TgdParams& p) {
  const double m = mean(p);
  return second_raw_moment(p) - m * m;
}

std::int64_t mode(const TgdParams& p) {
  p.validate();
  // For alpha >= 0 the pmf ratio p_{y+1}/p_y stays below 1, so the mode is 0.
  // For alpha < 0 the pmf is unimodal; walk up while it still increases.
  std::int64_t m = 0;
  double current = pmf(p, 0);
  while (true) {
    const double next = pmf(p, m + 1);
    if (!(next > current)) break;
    current = next;
    ++m;
  }
  return m;
}

std::vector<std::int64_t> sample(const TgdParams& p, std::size_t n, Rng& rng) {
  p.validate();
  std::vector<std::int64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(p, rng.uniform()));
  return out;
}

std::vector<std::int64_t> sample(const TgdParams& p, std::size_t n, RngSeed seed) {
  Rng rng(seed);
  return sample(p, n, rng);
}

std::int64_t draw(const TgdParams& p, Rng& rng) {
  return quantile(p, rng.uniform());
}

namespace {

// geometric(q) inverse transform: smallest y with 1 - q^{y+1} >= u
std::int64_t draw_geometric(double q, Rng& rng) {
  const double u = rng.uniform();
  const double raw = std::ceil(std::log1p(-u) / std::log(q)) - 1.0;
  return raw > 0.0 ? static_cast<std::int64_t>(raw) : 0;
}

}  // namespace

std::vector<std::int64_t> sample_mixture(const TgdParams& p, std::size_t n, Rng& rng) {
  p.validate();
  std::vector<std::int64_t> out;
  out.reserve(n);
  const double p_min = 0.5 * (1.0 + p.alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const bool take_min = rng.uniform() < p_min;
    const std::int64_t z1 = draw_geometric(p.q, rng);
    const std::int64_t z2 = draw_geometric(p.q, rng);
    out.push_back(take_min ? std::min(z1, z2) : std::max(z1, z2));
  }
  return out;
}

std::vector<std::int64_t> sample_mixture(const TgdParams& p, std::size_t n, RngSeed seed) {
  Rng rng(seed);
  return sample_mixture(p, n, rng);
}

}  // namespace tgd
