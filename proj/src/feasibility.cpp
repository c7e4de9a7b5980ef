#include "underlay/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace underlay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Lower bound from Pr(D2D outage) <= theta_d2d.
double lower_bound(const ScenarioConfig& cfg, const ChannelParams& ch, double chi_g) {
  const double budget = -std::log1p(-cfg.theta_d2d);
  if (ch.lambda_c == 0.0) {
    return chi_g * ch.lambda_g <= budget ? 0.0 : kInf;
  }
  if (chi_g == 0.0) return 0.0;
  const double bracket = budget / (ch.lambda_c * chi_g) - ch.lambda_g / ch.lambda_c;
  if (bracket <= kBracketFloor) return kInf;
  return ch.p_c * std::pow(bracket, -cfg.alpha / 2.0);
}

// Upper bound from Pr(CU outage) <= theta_cu.
double upper_bound(const ScenarioConfig& cfg, const ChannelParams& ch, double chi_c) {
  const double budget = -std::log1p(-cfg.theta_cu);
  if (ch.lambda_g == 0.0) {
    return chi_c * ch.lambda_c <= budget ? ch.p_up : kNaN;
  }
  if (chi_c == 0.0) return kInf;
  const double bracket = budget / (ch.lambda_g * chi_c) - ch.lambda_c / ch.lambda_g;
  if (bracket <= kBracketFloor) return kNaN;
  return ch.p_c * std::pow(bracket, cfg.alpha / 2.0);
}

}  // namespace

PowerBounds power_bounds(const ScenarioConfig& cfg, const ChannelParams& ch) {
  validate(cfg);
  validate(ch);
  if (ch.lambda_c + ch.lambda_g <= 0.0) {
    throw std::invalid_argument("channel has no interferers (lambda_c + lambda_g = 0)");
  }
  const ChiCoefficients chi = chi_coefficients(cfg);

  PowerBounds b;
  b.p_low = lower_bound(cfg, ch, chi.chi_g);
  b.p_high = upper_bound(cfg, ch, chi.chi_c);
  b.p_inf = std::max(0.0, b.p_low);
  b.p_sup = std::isnan(b.p_high) ? kNaN : std::min(ch.p_up, b.p_high);
  b.feasible = std::isfinite(b.p_inf) && std::isfinite(b.p_sup) && b.p_inf <= b.p_sup;
  return b;
}

}  // namespace underlay
