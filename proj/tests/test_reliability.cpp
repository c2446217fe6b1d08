#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tgd/reliability.hpp"

using namespace tgd;

TEST_CASE("hazard closed form equals pmf/sf") {
  CHECK(hazard({0.5, 0.0}, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(hazard({0.5, 0.0}, 7) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(hazard({0.5, 1.0}, 3) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(hazard({0.6, -0.5}, 3) ==
        doctest::Approx(pmf({0.6, -0.5}, 3) / sf({0.6, -0.5}, 3)).epsilon(1e-12));
  for (const TgdParams& p : oracle::param_grid())
    for (std::int64_t y = 0; y <= 50; ++y)
      CHECK(hazard(p, y) ==
            doctest::Approx(pmf(p, y) / sf(p, y)).epsilon(1e-12));
}

TEST_CASE("hazard bounds and tail limit") {
  for (const TgdParams& p : oracle::param_grid()) {
    for (std::int64_t y = 0; y <= 200; ++y) {
      const double h = hazard(p, y);
      if (p.alpha <= 0.0) {
        CHECK(h <= 1.0 - p.q + 1e-12);
      } else {
        CHECK(h >= 1.0 - p.q - 1e-12);
        CHECK(h <= 1.0 - p.q * p.q + 1e-12);
      }
    }
    if (std::abs(p.alpha) < 1.0 && p.q <= 0.9)
      CHECK(std::abs(hazard(p, 200) - (1.0 - p.q)) < 1e-6);
  }
}

TEST_CASE("second hazard equals the log survival ratio") {
  CHECK(second_hazard({0.5, 0.0}, 4) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(second_hazard({0.5, 1.0}, 2) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(second_hazard({0.7, 0.4}, 2) ==
        doctest::Approx(std::log(sf({0.7, 0.4}, 2) / sf({0.7, 0.4}, 3)))
            .epsilon(1e-12));
  for (const TgdParams& p : oracle::param_grid())
    for (std::int64_t y = 0; y <= 40; ++y)
      CHECK(second_hazard(p, y) ==
            doctest::Approx(std::log(sf(p, y) / sf(p, y + 1))).epsilon(1e-11));
}

TEST_CASE("reversed hazard") {
  CHECK(reversed_hazard({0.7, 0.3}, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(reversed_hazard({0.5, 0.0}, 1) ==
        doctest::Approx(0.25 / 0.75).epsilon(1e-13));
  CHECK(reversed_hazard({0.811, -0.465}, 2) ==
        doctest::Approx(pmf({0.811, -0.465}, 2) / cdf({0.811, -0.465}, 2))
            .epsilon(1e-12));
}

TEST_CASE("mrl closed form vs truncated sum of survivals") {
  CHECK(mrl({0.5, 0.0}, 3) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mrl({0.5, 1.0}, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (const TgdParams& p : oracle::param_grid()) {
    for (std::int64_t y : {0, 2, 5}) {
      const std::int64_t bound = oracle::support_bound(p.q);
      double acc = 0.0;
      for (std::int64_t j = y + 1; j <= bound; ++j) acc += sf(p, j);
      CHECK(mrl(p, y) == doctest::Approx(acc / sf(p, y)).epsilon(1e-10));
    }
  }
  // spot value from the summation oracle
  const TgdParams p{0.6, -0.4};
  double acc = 0.0;
  for (std::int64_t j = 6; j <= oracle::support_bound(0.6); ++j) acc += sf(p, j);
  CHECK(mrl(p, 5) == doctest::Approx(acc / sf(p, 5)).epsilon(1e-10));
}

TEST_CASE("mrl monotone with the closed-form step") {
  for (const TgdParams& p : oracle::param_grid()) {
    if (p.alpha <= -1.0 || p.alpha >= 1.0) continue;
    for (std::int64_t y = 0; y <= 200; ++y) {
      const double qy = std::pow(p.q, double(y));
      const double step_closed =
          (1.0 - p.alpha) * p.alpha * p.q * qy /
          ((1.0 + p.q) * (1.0 - p.alpha * (1.0 - qy)) *
           (1.0 - p.alpha * (1.0 - p.q * qy)));
      const double step = mrl(p, y + 1) - mrl(p, y);
      CHECK(step == doctest::Approx(step_closed).epsilon(1e-8));
      if (p.alpha < 0.0) CHECK(step <= 1e-12);
      if (p.alpha > 0.0) CHECK(step >= -1e-12);
    }
  }
}

TEST_CASE("hazard classification") {
  CHECK(classify_hazard({0.5, -0.3}) == HazardClass::Increasing);
  CHECK(classify_hazard({0.5, 0.3}) == HazardClass::Decreasing);
  CHECK(classify_hazard({0.5, 0.0}) == HazardClass::Constant);
  CHECK(classify_hazard({0.5, 1.0}) == HazardClass::Constant);
  CHECK(classify_hazard({0.5, -1.0}) == HazardClass::Increasing);
  // numeric scan agrees with the class over y = 0..200
  for (const TgdParams& p : oracle::param_grid()) {
    const HazardClass c = classify_hazard(p);
    bool nondecreasing = true, nonincreasing = true;
    for (std::int64_t y = 0; y < 200; ++y) {
      const double d = hazard(p, y + 1) - hazard(p, y);
      if (d < -1e-12) nondecreasing = false;
      if (d > 1e-12) nonincreasing = false;
    }
    if (c == HazardClass::Increasing) CHECK(nondecreasing);
    if (c == HazardClass::Decreasing) CHECK(nonincreasing);
    if (c == HazardClass::Constant) CHECK((nondecreasing && nonincreasing));
  }
}

TEST_CASE("likelihood ratio against the geometric is monotone") {
  for (const TgdParams& p : oracle::param_grid()) {
    double prev = 0.0;
    for (std::int64_t z = 0; z <= 200; ++z) {
      const double geo = (1.0 - p.q) * std::pow(p.q, double(z));
      const double ratio = pmf(p, z) / geo;
      const double closed =
          1.0 + p.alpha * ((1.0 + p.q) * std::pow(p.q, double(z)) - 1.0);
      CHECK(ratio == doctest::Approx(closed).epsilon(1e-11));
      if (z > 0) {
        if (p.alpha < 0.0) CHECK(ratio >= prev - 1e-13);
        if (p.alpha > 0.0) CHECK(ratio <= prev + 1e-13);
      }
      prev = ratio;
    }
  }
}

TEST_CASE("stochastic-order corollaries against the geometric") {
  for (const TgdParams& p : oracle::param_grid()) {
    const TgdParams geo{p.q, 0.0};
    const double m_t = mean(p);
    const double m_g = mean(geo);
    if (p.alpha < 0.0) CHECK(m_t >= m_g - 1e-12);
    if (p.alpha > 0.0) CHECK(m_t <= m_g + 1e-12);
    for (std::int64_t z = 0; z <= 200; ++z) {
      if (p.alpha < 0.0) {
        CHECK(sf(p, z) >= sf(geo, z) - 1e-12);                    // st order
        CHECK(hazard(p, z) <= hazard(geo, z) + 1e-12);            // hr order
        CHECK(reversed_hazard(p, z) >= reversed_hazard(geo, z) - 1e-12);
      } else if (p.alpha > 0.0) {
        CHECK(sf(p, z) <= sf(geo, z) + 1e-12);
        CHECK(hazard(p, z) >= hazard(geo, z) - 1e-12);
        CHECK(reversed_hazard(p, z) <= reversed_hazard(geo, z) + 1e-12);
      }
    }
  }
}

TEST_CASE("stochastic order in q at fixed alpha") {
  for (double a : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
    for (double q1 : {0.2, 0.5, 0.7}) {
      const double q2 = q1 + 0.2;
      for (std::int64_t y = 0; y <= 200; ++y)
        CHECK(sf({q1, a}, y) <= sf({q2, a}, y) + 1e-12);
    }
  }
}
