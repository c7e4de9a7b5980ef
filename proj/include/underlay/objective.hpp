#pragma once

#include <stdexcept>

#include "underlay/feasibility.hpp"
#include "underlay/model.hpp"

namespace underlay {

/// Per-channel energy efficiency EE(p) = (y / p) * exp(-z * p^(-2/alpha)).
///
/// y is the success-weighted rate mass |U_g| log2(1 + gamma_th) exp(-chi_g lambda_g),
/// with the rate evaluated at the threshold SIR, so y does not depend on p.
/// z = chi_g lambda_c p_c^(2/alpha) collects the CU interference.
struct ChannelObjective {
  double y = 0.0;
  double z = 0.0;
  double alpha = 3.0;
  PowerBounds bounds;
};

/// Inflection structure of EE: the quadratic
///   v^2 - (z/alpha)(2/alpha + 3) v + 2 z^2 / alpha^2,   v = p^(2/alpha)
/// has roots nu1 < nu2. EE is convex below p_boundary_1 = nu1^(alpha/2) and
/// above p_boundary_2 = nu2^(alpha/2), concave in between.
struct ConvexityIntervals {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double p_boundary_1 = 0.0;
  double p_boundary_2 = 0.0;
};

/// Raised for z = 0, where EE is a bare hyperbola with no stationary point.
class DegenerateObjective : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

ChannelObjective make_objective(const ScenarioConfig& cfg, const ChannelParams& ch);

/// Area spectral efficiency lambda_g |U_g| log2(1 + gamma_th) (1 - outage_d2d(p_g)).
double se_per_channel(const ScenarioConfig& cfg, const ChannelParams& ch, double p_g);

double ee_per_channel(const ChannelObjective& obj, double p_g);
double ee_derivative(const ChannelObjective& obj, double p_g);
double ee_second_derivative(const ChannelObjective& obj, double p_g);

ConvexityIntervals convexity_intervals(const ChannelObjective& obj);

/// Unconstrained maximiser (2z/alpha)^(alpha/2), where ee_derivative changes sign.
double stationary_point(const ChannelObjective& obj);

/// Maximiser of EE over [p_inf, p_sup]: the stationary point clipped to the
/// interval. Throws std::invalid_argument for infeasible bounds and
/// DegenerateObjective when the result would be p = 0 (z = 0 and p_inf = 0,
/// EE unbounded).
double per_channel_maximizer(const ChannelObjective& obj);

}  // namespace underlay
