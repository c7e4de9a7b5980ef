#include "underlay/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace underlay {
namespace {

ScenarioConfig unit_scenario(double alpha) {
  ScenarioConfig cfg;
  cfg.alpha = alpha;
  cfg.group_size = 1;
  cfg.d_gr = 1.0;
  cfg.d_cb = 1.0;
  cfg.rate_th_d2d = 1.0;
  cfg.rate_th_cu = 1.0;
  return cfg;
}

TEST(UnitsTest, DbmToMilliwatt) {
  EXPECT_EQ(dbm_to_mw(0.0), 1.0);
  EXPECT_NEAR(dbm_to_mw(30.0), 1000.0, 1e-12);
  EXPECT_NEAR(dbm_to_mw(25.0), 316.22776601683793, 1e-12);
}

TEST(UnitsTest, RoundTripAndMonotone) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-60.0, 60.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_NEAR(mw_to_dbm(dbm_to_mw(x)), x, 1e-12);
    EXPECT_LT(dbm_to_mw(x), dbm_to_mw(x + 1e-9));
  }
}

TEST(ScenarioTest, RejectsGammaPole) {
  ScenarioConfig cfg;
  cfg.alpha = 2.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  EXPECT_THROW(chi_d2d(cfg), std::invalid_argument);
  EXPECT_THROW(chi_cu(cfg), std::invalid_argument);
  cfg.alpha = 1.5;
  EXPECT_THROW(chi_d2d(cfg), std::invalid_argument);
}

TEST(ScenarioTest, RejectsClosedUnitThresholds) {
  ScenarioConfig cfg;
  cfg.theta_cu = 1.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg.theta_cu = 0.1;
  cfg.theta_d2d = 0.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg.theta_d2d = 0.1;
  cfg.d_gr = 0.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg.d_gr = 1.0;
  EXPECT_NO_THROW(validate(cfg));
}

TEST(ChiTest, ZeroRateGivesZero) {
  ScenarioConfig cfg = unit_scenario(3.0);
  cfg.rate_th_d2d = 0.0;
  cfg.rate_th_cu = 0.0;
  EXPECT_EQ(chi_d2d(cfg), 0.0);
  EXPECT_EQ(chi_cu(cfg), 0.0);
}

TEST(ChiTest, AlphaFourClosedForm) {
  // Gamma(3/2) Gamma(1/2) = pi / 2, threshold 1
  const ScenarioConfig cfg = unit_scenario(4.0);
  const double expected = std::numbers::pi * std::numbers::pi / 2;
  EXPECT_NEAR(chi_d2d(cfg), expected, 1e-13 * expected);
  EXPECT_NEAR(chi_cu(cfg), expected, 1e-13 * expected);
}

TEST(ChiTest, ReferencePointFromArbitraryPrecision) {
  ScenarioConfig cfg;
  cfg.alpha = 3.0;
  cfg.d_gr = 25.0;
  cfg.group_size = 3;
  cfg.rate_th_d2d = 3.0;
  // 40-digit evaluation of pi d^2 Gamma(5/3) Gamma(1/3) (2^1 - 1)^(2/3)
  EXPECT_NEAR(chi_d2d(cfg), 4748.515631470047, 1e-12 * 4748.5);
}

TEST(ChiTest, QuadraticInDistance) {
  ScenarioConfig cfg = unit_scenario(3.5);
  cfg.d_cb = 40.0;
  const double base = chi_cu(cfg);
  cfg.d_cb = 80.0;
  EXPECT_NEAR(chi_cu(cfg), 4 * base, 1e-12 * base);
}

TEST(ChiTest, GroupOfOneMatchesCellularForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ScenarioConfig cfg;
    cfg.alpha = 2.1 + 4 * u(rng);
    cfg.group_size = 1;
    cfg.d_gr = cfg.d_cb = 1 + 100 * u(rng);
    cfg.rate_th_d2d = cfg.rate_th_cu = 8 * u(rng);
    EXPECT_DOUBLE_EQ(chi_d2d(cfg), chi_cu(cfg));
  }
}

TEST(ChiTest, IncreasingInDistanceAndRate) {
  ScenarioConfig cfg;
  double prev = 0.0;
  for (double d = 0.5; d < 100; d *= 1.3) {
    cfg.d_gr = d;
    const double c = chi_d2d(cfg);
    EXPECT_GT(c, prev);
    prev = c;
  }
  prev = 0.0;
  for (double r = 0.1; r < 12; r += 0.3) {
    cfg.rate_th_d2d = r;
    const double c = chi_d2d(cfg);
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(OutageTest, NoInterferersNoOutage) {
  const ScenarioConfig cfg;
  const ChannelParams ch{0.0, 0.0, 100.0, 10.0};
  EXPECT_EQ(outage_d2d(cfg, ch, 1.0), 0.0);
  EXPECT_EQ(outage_cu(cfg, ch, 1.0), 0.0);
}

TEST(OutageTest, OnlyGroupInterferers) {
  const ScenarioConfig cfg = unit_scenario(4.0);  // chi = pi^2 / 2
  const ChannelParams ch{0.0, 1e-3, 100.0, 10.0};
  EXPECT_NEAR(outage_d2d(cfg, ch, 3.0), 4.9226460684216131e-3, 1e-17);
}

TEST(OutageTest, RejectsNonPositivePower) {
  const ScenarioConfig cfg;
  const ChannelParams ch{1e-4, 1e-3, 100.0, 10.0};
  EXPECT_THROW(outage_d2d(cfg, ch, 0.0), std::invalid_argument);
  EXPECT_THROW(outage_cu(cfg, ch, -1.0), std::invalid_argument);
}

TEST(OutageTest, Limits) {
  const ScenarioConfig cfg;
  const ChannelParams ch{1e-4, 1e-3, 398.0, 31.6};
  const double chi_g = chi_d2d(cfg);
  const double chi_c = chi_cu(cfg);
  EXPECT_NEAR(outage_d2d(cfg, ch, 1e30), -std::expm1(-chi_g * ch.lambda_g), 1e-12);
  EXPECT_NEAR(outage_cu(cfg, ch, 1e-30), -std::expm1(-chi_c * ch.lambda_c), 1e-12);
}

TEST(OutageTest, MonotonicityProperties) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    ScenarioConfig cfg;
    cfg.alpha = 2.2 + 3 * u(rng);
    cfg.group_size = 1 + static_cast<int>(4 * u(rng));
    cfg.d_gr = 1 + 10 * u(rng);
    cfg.d_cb = 1 + 20 * u(rng);
    cfg.rate_th_d2d = 0.2 + 4 * u(rng);
    cfg.rate_th_cu = 0.2 + 2 * u(rng);
    ChannelParams ch{1e-5 * std::pow(100.0, u(rng)), 1e-5 * std::pow(100.0, u(rng)),
                     10 + 500 * u(rng), 30.0};
    const double p = 0.01 * std::pow(1e4, u(rng));

    const double d2d = outage_d2d(cfg, ch, p);
    const double cu = outage_cu(cfg, ch, p);
    EXPECT_GE(d2d, 0.0);
    EXPECT_LE(d2d, 1.0);
    EXPECT_GE(cu, 0.0);
    EXPECT_LE(cu, 1.0);

    EXPECT_LE(outage_d2d(cfg, ch, p * 1.1), d2d);
    EXPECT_GE(outage_cu(cfg, ch, p * 1.1), cu);

    ChannelParams denser = ch;
    denser.lambda_c *= 1.2;
    EXPECT_GE(outage_d2d(cfg, denser, p), d2d);
    denser = ch;
    denser.lambda_g *= 1.2;
    EXPECT_GE(outage_d2d(cfg, denser, p), d2d);

    ScenarioConfig wider = cfg;
    wider.d_gr *= 1.2;
    EXPECT_GE(outage_d2d(wider, ch, p), d2d);
    wider = cfg;
    wider.rate_th_d2d *= 1.2;
    EXPECT_GE(outage_d2d(wider, ch, p), d2d);
  }
}

}  // namespace
}  // namespace underlay
