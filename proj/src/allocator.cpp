#include "underlay/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace underlay {

namespace {

double total(std::span<const double> xs) { return std::accumulate(xs.begin(), xs.end(), 0.0); }

void fill_objective(std::span<const ChannelObjective> objs, Allocation& a) {
  a.ee_per_channel.resize(objs.size());
  for (std::size_t k = 0; k < objs.size(); ++k) {
    a.ee_per_channel[k] = ee_per_channel(objs[k], a.powers[k]);
  }
  a.ee_total = total(a.ee_per_channel);
}

void check_inputs(std::span<const ChannelObjective> objs, double p_total) {
  if (objs.empty()) {
    throw AllocationError(AllocationError::Kind::GlobalInfeasible, "no feasible channels");
  }
  if (!(p_total > 0.0)) throw std::invalid_argument("total D2D power budget must be > 0");
  double floor_sum = 0.0;
  for (std::size_t k = 0; k < objs.size(); ++k) {
    if (!objs[k].bounds.feasible) {
      throw std::invalid_argument("channel " + std::to_string(k) + " has infeasible bounds");
    }
    floor_sum += objs[k].bounds.p_inf;
  }
  if (floor_sum > p_total) {
    throw AllocationError(AllocationError::Kind::GlobalInfeasible,
                          "sum of per-channel minimum powers " + std::to_string(floor_sum) +
                              " mW exceeds the budget " + std::to_string(p_total) + " mW");
  }
}

// EE lost on channel k by stepping down by delta; +inf when the step leaves p > 0.
double step_loss(const ChannelObjective& obj, double p, double delta) {
  const double next = p - delta;
  if (!(next > 0.0)) return std::numeric_limits<double>::infinity();
  return std::abs(ee_per_channel(obj, p) - ee_per_channel(obj, next));
}

}  // namespace

std::size_t tie_break(std::span<const std::size_t> candidates) {
  if (candidates.empty()) throw std::invalid_argument("tie_break: empty candidate set");
  return *std::min_element(candidates.begin(), candidates.end());
}

Allocation allocate(std::span<const ChannelObjective> objs, double p_total,
                    const AlgorithmParams& params) {
  if (params.n < 1) throw std::invalid_argument("algorithm parameter n must be >= 1");
  if (params.epsilon && !(*params.epsilon > 0.0)) {
    throw std::invalid_argument("algorithm parameter epsilon must be > 0");
  }
  check_inputs(objs, p_total);

  const std::size_t K = objs.size();
  Allocation a;
  a.powers.resize(K);
  for (std::size_t k = 0; k < K; ++k) a.powers[k] = per_channel_maximizer(objs[k]);
  a.last_abs_derivative.assign(K, 0.0);

  std::vector<std::size_t> active(K);
  std::iota(active.begin(), active.end(), std::size_t{0});

  const double excess = total(a.powers) - p_total;
  if (excess <= 0.0) {
    fill_objective(objs, a);
    a.converged = true;
    a.active_set_final = active;
    a.epsilon = params.epsilon.value_or(0.0);
    return a;
  }

  a.delta = excess / static_cast<double>(params.n);
  a.epsilon = params.epsilon.value_or(a.delta / 2.0);
  fill_objective(objs, a);
  a.ee_trace.push_back(a.ee_total);

  // Each iteration either removes delta from the total or shrinks the active set.
  const int max_iterations = params.n + static_cast<int>(K) + 1;
  std::vector<std::size_t> ties;
  while (total(a.powers) - p_total >= a.epsilon) {
    if (active.empty() || a.iterations >= max_iterations) {
      a.active_set_final = active;
      fill_objective(objs, a);
      throw AllocationError(AllocationError::Kind::NoProgress,
                            "active set exhausted with the power budget still exceeded", a);
    }

    double best = std::numeric_limits<double>::infinity();
    ties.clear();
    for (std::size_t k : active) {
      const double loss = step_loss(objs[k], a.powers[k], a.delta);
      if (loss < best) {
        best = loss;
        ties.assign(1, k);
      } else if (loss == best) {
        ties.push_back(k);
      }
    }
    const std::size_t j = tie_break(ties);

    const double next = a.powers[j] - a.delta;
    // The upper test cannot trigger while powers only decrease; kept as a guard.
    if (next > objs[j].bounds.p_sup || next < objs[j].bounds.p_inf) {
      active.erase(std::find(active.begin(), active.end(), j));
    } else {
      a.powers[j] = next;
      a.last_abs_derivative[j] = std::abs(ee_derivative(objs[j], next));
    }
    ++a.iterations;
    fill_objective(objs, a);
    a.ee_trace.push_back(a.ee_total);
  }

  a.converged = std::abs(total(a.powers) - p_total) < a.epsilon;
  a.active_set_final = active;
  return a;
}

Allocation brute_force_oracle(std::span<const ChannelObjective> objs, double p_total,
                              int grid_points) {
  if (objs.empty() || objs.size() > 4) {
    throw std::invalid_argument("brute_force_oracle supports 1 to 4 channels");
  }
  if (grid_points < 1 || grid_points > 100) {
    throw std::invalid_argument("brute_force_oracle supports 1 to 100 grid points per channel");
  }
  const std::size_t K = objs.size();
  for (const auto& obj : objs) {
    if (!obj.bounds.feasible) throw std::invalid_argument("brute_force_oracle: infeasible channel");
  }

  // Per-channel grid values and their EE; p = 0 is excluded (EE undefined there).
  std::vector<std::vector<double>> grid(K), value(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double lo = objs[k].bounds.p_inf;
    const double hi = objs[k].bounds.p_sup;
    for (int i = 0; i < grid_points; ++i) {
      const double p = grid_points == 1 ? lo : lo + (hi - lo) * i / (grid_points - 1);
      if (p > 0.0) {
        grid[k].push_back(p);
        value[k].push_back(ee_per_channel(objs[k], p));
      }
    }
    if (grid[k].empty()) {
      throw std::invalid_argument("brute_force_oracle: channel grid has no positive power");
    }
  }

  std::vector<std::size_t> idx(K, 0), best_idx;
  double best = -std::numeric_limits<double>::infinity();
  // Lexicographic odometer; strict improvement keeps the first maximiser found.
  const auto advance = [&] {
    for (std::size_t k = K; k-- > 0;) {
      if (++idx[k] < grid[k].size()) return true;
      idx[k] = 0;
    }
    return false;
  };
  while (true) {
    double power = 0.0;
    double ee = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      power += grid[k][idx[k]];
      ee += value[k][idx[k]];
    }
    if (power <= p_total && ee > best) {
      best = ee;
      best_idx = idx;
    }
    if (!advance()) break;
  }

  if (best_idx.empty()) {
    throw AllocationError(AllocationError::Kind::GlobalInfeasible,
                          "no grid combination satisfies the power budget");
  }
  Allocation a;
  a.powers.resize(K);
  for (std::size_t k = 0; k < K; ++k) a.powers[k] = grid[k][best_idx[k]];
  fill_objective(objs, a);
  a.converged = true;
  a.active_set_final.resize(K);
  std::iota(a.active_set_final.begin(), a.active_set_final.end(), std::size_t{0});
  a.last_abs_derivative.assign(K, 0.0);
  return a;
}

}  // namespace underlay
