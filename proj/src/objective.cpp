#include "underlay/objective.hpp"

#include <algorithm>
#include <cmath>

namespace underlay {

namespace {

void require_power(double p_g) {
  if (!(p_g > 0.0) || !std::isfinite(p_g)) {
    throw std::invalid_argument("D2D transmit power must be positive and finite");
  }
}

}  // namespace

ChannelObjective make_objective(const ScenarioConfig& cfg, const ChannelParams& ch) {
  ChannelObjective obj;
  obj.bounds = power_bounds(cfg, ch);
  const double chi_g = chi_d2d(cfg);
  const double rate = static_cast<double>(cfg.group_size) * std::log2(1.0 + sir_threshold_d2d(cfg));
  obj.y = rate * std::exp(-chi_g * ch.lambda_g);
  obj.z = chi_g * ch.lambda_c * std::pow(ch.p_c, 2.0 / cfg.alpha);
  obj.alpha = cfg.alpha;
  return obj;
}

double se_per_channel(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g) {
  const double rate = static_cast<double>(cfg.group_size) * std::log2(1.0 + sir_threshold_d2d(cfg));
  return ch.lambda_g * rate * coverage_d2d(cfg, ch, p_g);
}

double ee_per_channel(const ChannelObjective& obj, double p_g) {
  require_power(p_g);
  return obj.y / p_g * std::exp(-obj.z * std::pow(p_g, -2.0 / obj.alpha));
}

double ee_derivative(const ChannelObjective& obj, double p_g) {
  require_power(p_g);
  const double u = std::pow(p_g, -2.0 / obj.alpha);
  return obj.y / (p_g * p_g) * std::exp(-obj.z * u) * (2.0 * obj.z / obj.alpha * u - 1.0);
}

double ee_second_derivative(const ChannelObjective& obj, double p_g) {
  require_power(p_g);
  const double a = obj.alpha;
  const double u = std::pow(p_g, -2.0 / a);
  const double zu = obj.z * u;
  // 2 y e^{-zu} p^-3 (2 (zu)^2 / a^2 - (zu / a)(2/a + 3) + 1)
  const double quad = 2.0 * zu * zu / (a * a) - zu / a * (2.0 / a + 3.0) + 1.0;
  return 2.0 * obj.y * std::exp(-zu) / (p_g * p_g * p_g) * quad;
}

ConvexityIntervals convexity_intervals(const ChannelObjective& obj) {
  if (!(obj.z > 0.0)) {
    throw DegenerateObjective("convexity intervals need z > 0");
  }
  const double a = obj.alpha;
  const double scale = obj.z / (2.0 * a * a);
  const double centre = 2.0 + 3.0 * a;
  const double disc = std::sqrt(a * a + 12.0 * a + 4.0);
  ConvexityIntervals ci;
  ci.nu1 = scale * (centre - disc);
  ci.nu2 = scale * (centre + disc);
  ci.p_boundary_1 = std::pow(ci.nu1, a / 2.0);
  ci.p_boundary_2 = std::pow(ci.nu2, a / 2.0);
  return ci;
}

double stationary_point(const ChannelObjective& obj) {
  return std::pow(2.0 * obj.z / obj.alpha, obj.alpha / 2.0);
}

double per_channel_maximizer(const ChannelObjective& obj) {
  if (!obj.bounds.feasible) {
    throw std::invalid_argument("per_channel_maximizer: channel bounds are infeasible");
  }
  const double p = std::clamp(stationary_point(obj), obj.bounds.p_inf, obj.bounds.p_sup);
  if (!(p > 0.0)) {
    throw DegenerateObjective("energy efficiency is unbounded as p -> 0 (z = 0, p_inf = 0)");
  }
  return p;
}

}  // namespace underlay
