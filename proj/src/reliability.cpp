#include "tgd/reliability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tgd {

namespace {

void require_nonneg(std::int64_t y, const char* where) {
  if (y < 0) throw std::domain_error(std::string(where) + ": y must be >= 0");
}

}  // namespace

double hazard(const TgdParams& p, std::int64_t y) {
  p.validate();
  require_nonneg(y, "hazard");
  const double qy = std::pow(p.q, static_cast<double>(y));
  const double den = (1.0 - p.alpha) + p.alpha * qy;
  if (den <= 0.0) throw std::domain_error("hazard: survival is zero");
  return ((1.0 - p.alpha) * (1.0 - p.q) + p.alpha * qy * (1.0 - p.q * p.q)) / den;
}

double second_hazard(const TgdParams& p, std::int64_t y) {
  p.validate();
  require_nonneg(y, "second_hazard");
  const double sy = sf(p, y);
  const double sy1 = sf(p, y + 1);
  if (sy <= 0.0 || sy1 <= 0.0)
    throw std::domain_error("second_hazard: survival is zero");
  return std::log(sy / sy1);
}

double reversed_hazard(const TgdParams& p, std::int64_t y) {
  p.validate();
  require_nonneg(y, "reversed_hazard");
  const double F = cdf(p, y);
  if (F <= 0.0) throw std::domain_error("reversed_hazard: cdf is zero");
  return pmf(p, y) / F;
}

double mrl(const TgdParams& p, std::int64_t y) {
  p.validate();
  require_nonneg(y, "mrl");
  const double qy = std::pow(p.q, static_cast<double>(y));
  const double den = (1.0 - p.q * p.q) * (1.0 - p.alpha + p.alpha * qy);
  if (den <= 0.0) throw std::domain_error("mrl: survival is zero");
  return p.q * ((1.0 + p.q) * (1.0 - p.alpha) + p.alpha * p.q * qy) / den;
}

HazardClass classify_hazard(const TgdParams& p) {
  p.validate();
  if (p.alpha == 0.0 || p.alpha == 1.0) return HazardClass::Constant;
  return p.alpha < 0.0 ? HazardClass::Increasing : HazardClass::Decreasing;
}

}  // namespace tgd
