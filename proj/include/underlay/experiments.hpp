#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "underlay/allocator.hpp"
#include "underlay/config.hpp"
#include "underlay/monte_carlo.hpp"

namespace underlay {

enum class OptimizeStatus { converged, not_converged, global_infeasible, no_progress };

struct ChannelReport {
  std::size_t index = 0;
  PowerBounds bounds;
  double p_star = 0.0;  // per-channel maximiser, 0 for infeasible channels
  double power = 0.0;   // allocated power, 0 for infeasible channels
  double ee = 0.0;
  double se = 0.0;
};

struct OptimizeReport {
  OptimizeStatus status = OptimizeStatus::global_infeasible;
  std::string message;
  std::vector<ChannelReport> channels;  // every configured channel, in order
  std::optional<Allocation> allocation; // over the feasible channels only
  int feasible_channels = 0;
  double ee_total = 0.0;
  double se_total = 0.0;
};

/// Bounds every channel, drops the infeasible ones and runs the allocator on
/// the rest. Allocator failures are reported in the status, not thrown.
OptimizeReport run_optimize(const RunConfig& cfg);

void print_report(std::ostream& out, const OptimizeReport& report);

/// Process exit code for a finished optimisation: 0 converged, 2 global
/// infeasibility, 3 no progress, 4 stopped without meeting the tolerance.
int exit_code(OptimizeStatus status);

struct SweepRow {
  double axis1_value = 0.0;
  std::optional<double> axis2_value;
  double ee_total = 0.0;
  double se_total = 0.0;
  int feasible_channels = 0;
  bool converged = false;
};

/// Returns a copy of cfg with one sweep axis set to value.
///   se_target      -> scenario.rate_th_d2d
///   pg_max_dbm     -> scenario.p_total_d2d, and every channel's p_up = value - 10 dB
///   lambda_g_scale -> every channel's lambda_g multiplied by value
RunConfig apply_axis(const RunConfig& cfg, const std::string& axis, double value);

/// One row per grid point, axis1 outer and axis2 inner.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct McRow {
  Link link = Link::d2d;
  double p_g_mw = 0.0;
  double lambda_c = 0.0;
  double lambda_g = 0.0;
  double analytical = 0.0;
  McEstimate estimate;
  std::uint64_t seed = 0;
  bool agrees = false;
};

/// Grid: links x distinct (lambda_c, lambda_g, p_c) channel triples x p_g_dbm.
std::vector<McRow> run_validate_mc(const RunConfig& cfg);
void write_mc_csv(std::ostream& out, const std::vector<McRow>& rows);

}  // namespace underlay
