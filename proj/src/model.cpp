#include "underlay/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "underlay/gamma.hpp"

namespace underlay {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

void require_power(double p_g) {
  if (!(p_g > 0.0) || !std::isfinite(p_g)) {
    throw std::invalid_argument("D2D transmit power must be positive and finite");
  }
}

double chi(double alpha, double distance, double threshold) {
  return std::numbers::pi * distance * distance * fading_integral(alpha) *
         std::pow(threshold, 2.0 / alpha);
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  require(cfg.alpha > 2.0 && std::isfinite(cfg.alpha),
          "alpha must be > 2 (Gamma(1 - 2/alpha) has a pole at alpha = 2)");
  require(cfg.group_size >= 1, "group_size must be >= 1");
  require(cfg.d_gr > 0.0 && std::isfinite(cfg.d_gr), "d_gr must be > 0");
  require(cfg.d_cb > 0.0 && std::isfinite(cfg.d_cb), "d_cb must be > 0");
  require(cfg.rate_th_d2d >= 0.0 && std::isfinite(cfg.rate_th_d2d), "rate_th_d2d must be >= 0");
  require(cfg.rate_th_cu >= 0.0 && std::isfinite(cfg.rate_th_cu), "rate_th_cu must be >= 0");
  require(open_unit(cfg.theta_d2d), "theta_d2d must lie in the open interval (0, 1)");
  require(open_unit(cfg.theta_cu), "theta_cu must lie in the open interval (0, 1)");
  require(cfg.p_total_d2d > 0.0 && std::isfinite(cfg.p_total_d2d), "p_total_d2d must be > 0");
}

void validate(const ChannelParams& ch) {
  require(ch.lambda_c >= 0.0 && std::isfinite(ch.lambda_c), "lambda_c must be >= 0");
  require(ch.lambda_g >= 0.0 && std::isfinite(ch.lambda_g), "lambda_g must be >= 0");
  require(ch.p_c > 0.0 && std::isfinite(ch.p_c), "p_c must be > 0");
  require(ch.p_up > 0.0 && std::isfinite(ch.p_up), "p_up must be > 0");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double fading_integral(double alpha) {
  require(alpha > 2.0, "alpha must be > 2 (Gamma(1 - 2/alpha) has a pole at alpha = 2)");
  const double delta = 2.0 / alpha;
  return gamma_fn(1.0 + delta) * gamma_fn(1.0 - delta);
}

double sir_threshold_d2d(const ScenarioConfig& cfg) {
  return std::exp2(cfg.rate_th_d2d / static_cast<double>(cfg.group_size)) - 1.0;
}

double sir_threshold_cu(const ScenarioConfig& cfg) { return std::exp2(cfg.rate_th_cu) - 1.0; }

double chi_d2d(const ScenarioConfig& cfg) {
  return chi(cfg.alpha, cfg.d_gr, sir_threshold_d2d(cfg));
}

double chi_cu(const ScenarioConfig& cfg) {
  return chi(cfg.alpha, cfg.d_cb, sir_threshold_cu(cfg));
}

ChiCoefficients chi_coefficients(const ScenarioConfig& cfg) {
  return {chi_d2d(cfg), chi_cu(cfg)};
}

namespace {

double d2d_exponent(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g) {
  require_power(p_g);
  const double load =
      ch.lambda_c * std::pow(ch.p_c / p_g, 2.0 / cfg.alpha) + ch.lambda_g;
  return chi_d2d(cfg) * load;
}

}  // namespace

double outage_d2d(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g) {
  return -std::expm1(-d2d_exponent(cfg, ch, p_g));
}

double coverage_d2d(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g) {
  return std::exp(-d2d_exponent(cfg, ch, p_g));
}

double outage_cu(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g) {
  require_power(p_g);
  const double load =
      ch.lambda_c + ch.lambda_g * std::pow(p_g / ch.p_c, 2.0 / cfg.alpha);
  return -std::expm1(-chi_cu(cfg) * load);
}

}  // namespace underlay
