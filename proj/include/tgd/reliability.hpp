#ifndef TGD_RELIABILITY_HPP
#define TGD_RELIABILITY_HPP

#include <cstdint>

#include "tgd/distribution.hpp"

namespace tgd {

enum class HazardClass { Increasing, Decreasing, Constant };

// discrete hazard P(Y = y) / P(Y >= y)
double hazard(const TgdParams& p, std::int64_t y);

// second rate of failure log(S(y) / S(y+1))
double second_hazard(const TgdParams& p, std::int64_t y);

// reversed hazard P(Y = y) / P(Y <= y)
double reversed_hazard(const TgdParams& p, std::int64_t y);

// mean residual life E[Y - y | Y >= y]
double mrl(const TgdParams& p, std::int64_t y);

// Constant for alpha in {0, 1}, increasing for alpha < 0, decreasing for
// alpha in (0, 1).
HazardClass classify_hazard(const TgdParams& p);

}  // namespace tgd

#endif
