#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "underlay/model.hpp"

namespace underlay {

enum class Link { d2d, cellular };

std::string_view to_string(Link link);
/// Throws std::invalid_argument for anything but "d2d" or "cellular".
Link parse_link(std::string_view name);

struct McConfig {
  std::int64_t trials = 50000;
  std::optional<double> sim_radius;  // m; chosen by default_sim_radius() when empty
  std::uint64_t seed = 1;
  Link link = Link::d2d;
};

struct McEstimate {
  double p_hat = 0.0;
  std::int64_t trials = 0;
  std::int64_t outages = 0;
  double half_width_95 = 0.0;     // Wald interval, 1.96 sqrt(p(1-p)/n)
  double truncation_bound = 0.0;  // bias bound from ignoring interferers beyond sim_radius
  double sim_radius = 0.0;
};

/// Closed-form outage probability for the given link (outage_d2d or outage_cu).
double analytical_outage(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g, Link link);

/// Upper bound on how much the disc-truncated outage probability can fall
/// below the full-plane one. Interferers beyond R carry a mean normalised load
/// of at most sum_i lambda_i 2 pi s_i R^(2-alpha) / (alpha - 2), with
/// s_i = T d^alpha p_i / p_ref; the bound is the closed form with that load
/// removed minus the closed form itself.
double truncation_bias_bound(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g,
                             double sim_radius, Link link);

/// Smallest disc radius whose truncation_bias_bound is below target.
double default_sim_radius(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g,
                          Link link, double target = 0.002);

/// Simulates the reference link at the origin against Poisson CU and MG
/// interferers on a disc, with unit-mean exponential fades on every link.
/// Each trial draws from its own generator seeded by (seed, trial index), so
/// the result depends only on the configuration.
McEstimate estimate_outage(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g,
                           const McConfig& mc);

/// |p_hat - analytical| <= half_width_95 + truncation_bound.
bool agrees(const McEstimate& est, double analytical);

}  // namespace underlay
