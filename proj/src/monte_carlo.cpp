#include "underlay/monte_carlo.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace underlay {

namespace {

struct InterfererClass {
  double density = 0.0;
  double power = 0.0;  // mW
};

struct LinkGeometry {
  double distance = 0.0;
  double threshold = 0.0;  // SIR target
  double signal_power = 0.0;
  std::array<InterfererClass, 2> interferers;
};

LinkGeometry geometry(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g, Link link) {
  LinkGeometry g;
  g.interferers = {InterfererClass{ch.lambda_c, ch.p_c}, InterfererClass{ch.lambda_g, p_g}};
  if (link == Link::d2d) {
    g.distance = cfg.d_gr;
    g.threshold = sir_threshold_d2d(cfg);
    g.signal_power = p_g;
  } else {
    g.distance = cfg.d_cb;
    g.threshold = sir_threshold_cu(cfg);
    g.signal_power = ch.p_c;
  }
  return g;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(trial));
}

void check_inputs(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g) {
  validate(cfg);
  validate(ch);
  if (!(p_g > 0.0) || !std::isfinite(p_g)) {
    throw std::invalid_argument("D2D transmit power must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(Link link) { return link == Link::d2d ? "d2d" : "cellular"; }

Link parse_link(std::string_view name) {
  if (name == "d2d") return Link::d2d;
  if (name == "cellular") return Link::cellular;
  throw std::invalid_argument("unknown link '" + std::string(name) + "' (expected d2d or cellular)");
}

double analytical_outage(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g, Link link) {
  return link == Link::d2d ? outage_d2d(cfg, ch, p_g) : outage_cu(cfg, ch, p_g);
}

double truncation_bias_bound(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g,
                             double sim_radius, Link link) {
  check_inputs(cfg, ch, p_g);
  if (!(sim_radius > 0.0)) throw std::invalid_argument("sim_radius must be > 0");
  if (std::isinf(sim_radius)) return 0.0;

  const LinkGeometry g = geometry(cfg, ch, p_g, link);
  const double a = cfg.alpha;
  const double full_load = -std::log1p(-analytical_outage(cfg, ch, p_g, link));
  double tail_load = 0.0;
  for (const auto& c : g.interferers) {
    const double s = g.threshold * std::pow(g.distance, a) * c.power / g.signal_power;
    tail_load += c.density * 2.0 * std::numbers::pi * s * std::pow(sim_radius, 2.0 - a) / (a - 2.0);
  }
  const double kept = std::max(full_load - tail_load, 0.0);
  // exp(-kept) - exp(-full_load), written to keep precision for small tails
  return std::exp(-kept) * -std::expm1(-(full_load - kept));
}

double default_sim_radius(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g,
                          Link link, double target) {
  if (!(target > 0.0)) throw std::invalid_argument("truncation target must be > 0");
  const auto bound = [&](double r) { return truncation_bias_bound(cfg, ch, p_g, r, link); };
  const LinkGeometry g = geometry(cfg, ch, p_g, link);
  double lo = g.distance;
  if (bound(lo) < target) return lo;
  double hi = 2.0 * lo;
  while (bound(hi) >= target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("no finite simulation radius meets the truncation target");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bound(mid) < target ? hi : lo) = mid;
  }
  return hi;
}

McEstimate estimate_outage(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g,
                           const McConfig& mc) {
  check_inputs(cfg, ch, p_g);
  if (mc.trials < 1) throw std::invalid_argument("Monte Carlo trials must be >= 1");

  McEstimate est;
  est.trials = mc.trials;
  est.sim_radius = mc.sim_radius ? *mc.sim_radius : default_sim_radius(cfg, ch, p_g, mc.link);
  if (!(est.sim_radius > 0.0) || !std::isfinite(est.sim_radius)) {
    throw std::invalid_argument("sim_radius must be positive and finite");
  }
  est.truncation_bound = truncation_bias_bound(cfg, ch, p_g, est.sim_radius, mc.link);

  const LinkGeometry g = geometry(cfg, ch, p_g, mc.link);
  const double r2_max = est.sim_radius * est.sim_radius;
  const double area = std::numbers::pi * r2_max;
  const double half_alpha = cfg.alpha / 2.0;
  const double path_gain = std::pow(g.distance, -cfg.alpha);

  std::exponential_distribution<double> fade(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<std::poisson_distribution<std::int64_t>, 2> counts;
  for (std::size_t c = 0; c < g.interferers.size(); ++c) {
    const double mean = g.interferers[c].density * area;
    if (mean > 0.0) counts[c] = std::poisson_distribution<std::int64_t>(mean);
  }

  for (std::int64_t trial = 0; trial < mc.trials; ++trial) {
    std::mt19937_64 rng(trial_seed(mc.seed, trial));
    for (auto& d : counts) d.reset();
    fade.reset();

    const double signal = g.signal_power * fade(rng) * path_gain;
    // Outage iff SIR < T, i.e. interference > signal / T.
    const double limit = g.threshold > 0.0 ? signal / g.threshold : std::numeric_limits<double>::infinity();
    double interference = 0.0;
    bool outage = false;
    for (std::size_t c = 0; c < g.interferers.size() && !outage; ++c) {
      if (!(g.interferers[c].density > 0.0)) continue;
      const std::int64_t n = counts[c](rng);
      for (std::int64_t i = 0; i < n; ++i) {
        // Uniform on the disc: r^2 = R^2 U.
        const double r2 = r2_max * unit(rng);
        interference += g.interferers[c].power * fade(rng) * std::pow(r2, -half_alpha);
        if (interference > limit) {
          outage = true;
          break;
        }
      }
    }
    if (outage) ++est.outages;
  }

  const double n = static_cast<double>(est.trials);
  est.p_hat = static_cast<double>(est.outages) / n;
  est.half_width_95 = 1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);
  return est;
}

bool agrees(const McEstimate& est, double analytical) {
  return std::abs(est.p_hat - analytical) <= est.half_width_95 + est.truncation_bound;
}

}  // namespace underlay
