#pragma once

#include "underlay/model.hpp"

namespace underlay {

/// Feasible interval for the MG transmit power on one channel.
///
/// p_low comes from the D2D outage constraint and p_high from the CU
/// protection constraint. An unsatisfiable D2D constraint is reported as
/// p_low = +inf, an unsatisfiable CU constraint as p_high = NaN. Neither is an
/// error: the caller filters infeasible channels.
struct PowerBounds {
  double p_low = 0.0;
  double p_high = 0.0;
  double p_inf = 0.0;
  double p_sup = 0.0;
  bool feasible = false;
};

/// Brackets at or below this value are treated as zero (infeasible).
inline constexpr double kBracketFloor = 1e-12;

PowerBounds power_bounds(const ScenarioConfig& cfg, const ChannelParams& ch);

}  // namespace underlay
