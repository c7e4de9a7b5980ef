#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "underlay/objective.hpp"

namespace underlay {

struct AlgorithmParams {
  int n = 1000;                   // number of decrement steps the deficit is split into
  std::optional<double> epsilon;  // stopping tolerance, mW; defaults to delta / 2
};

struct Allocation {
  std::vector<double> powers;          // mW, one per channel
  double ee_total = 0.0;
  std::vector<double> ee_per_channel;
  int iterations = 0;
  bool converged = false;
  std::vector<std::size_t> active_set_final;
  double delta = 0.0;                  // step size; 0 when no reallocation was needed
  double epsilon = 0.0;
  // |EE'(p_j)| right after channel j's last decrement, 0 if never decremented.
  // Informational only: no decision depends on it.
  std::vector<double> last_abs_derivative;
  // Total EE before the first and after every loop iteration (reallocation only).
  std::vector<double> ee_trace;
};

class AllocationError : public std::runtime_error {
 public:
  enum class Kind { GlobalInfeasible, NoProgress };

  AllocationError(Kind kind, const std::string& what, std::optional<Allocation> best = {})
      : std::runtime_error(what), kind_(kind), best_(std::move(best)) {}

  Kind kind() const noexcept { return kind_; }
  const std::optional<Allocation>& best() const noexcept { return best_; }

 private:
  Kind kind_;
  std::optional<Allocation> best_;
};

/// Lowest index of a nonempty candidate set.
std::size_t tie_break(std::span<const std::size_t> candidates);

/// Greedy power reallocation. Every channel starts at its per-channel
/// maximiser p*. If sum(p*) fits into p_total the result is p* itself.
/// Otherwise the excess is removed in steps of delta = excess / n, each step
/// taken from the active channel whose EE drops the least; a channel whose
/// next step would cross p_inf leaves the active set for good.
///
/// Throws AllocationError(GlobalInfeasible) if sum(p_inf) > p_total, and
/// AllocationError(NoProgress) carrying the last allocation if the active set
/// empties before the budget is met.
Allocation allocate(std::span<const ChannelObjective> objs, double p_total,
                    const AlgorithmParams& params);

/// Exhaustive search over a uniform grid of grid_points values per channel on
/// [p_inf, p_sup]. Limited to 4 channels and 100 points per channel.
Allocation brute_force_oracle(std::span<const ChannelObjective> objs, double p_total,
                              int grid_points);

}  // namespace underlay
