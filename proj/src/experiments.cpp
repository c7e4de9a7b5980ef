#include "underlay/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <stdexcept>

namespace underlay {

namespace {

// Locale-independent shortest-ish representation for CSV output.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void fill_totals(const ScenarioConfig& scenario, const std::vector<ChannelParams>& channels,
                 OptimizeReport& report, const std::vector<std::size_t>& feasible,
                 const Allocation& a) {
  report.ee_total = 0.0;
  report.se_total = 0.0;
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    ChannelReport& c = report.channels[feasible[i]];
    c.power = a.powers[i];
    c.ee = a.ee_per_channel[i];
    c.se = se_per_channel(scenario, channels[feasible[i]], c.power);
    report.ee_total += c.ee;
    report.se_total += c.se;
  }
}

}  // namespace

OptimizeReport run_optimize(const RunConfig& cfg) {
  validate(cfg);
  const ScenarioConfig scenario = cfg.scenario_model();
  const std::vector<ChannelParams> channels = cfg.channel_models();

  OptimizeReport report;
  std::vector<ChannelObjective> objs;
  std::vector<std::size_t> feasible;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    ChannelReport c;
    c.index = k;
    const ChannelObjective obj = make_objective(scenario, channels[k]);
    c.bounds = obj.bounds;
    if (obj.bounds.feasible) {
      c.p_star = per_channel_maximizer(obj);
      objs.push_back(obj);
      feasible.push_back(k);
    }
    report.channels.push_back(c);
  }
  report.feasible_channels = static_cast<int>(feasible.size());

  try {
    Allocation a = allocate(objs, scenario.p_total_d2d, cfg.algorithm);
    fill_totals(scenario, channels, report, feasible, a);
    report.status = a.converged ? OptimizeStatus::converged : OptimizeStatus::not_converged;
    report.allocation = std::move(a);
  } catch (const AllocationError& e) {
    report.message = e.what();
    if (e.kind() == AllocationError::Kind::GlobalInfeasible) {
      report.status = OptimizeStatus::global_infeasible;
    } else {
      report.status = OptimizeStatus::no_progress;
      if (e.best()) {
        fill_totals(scenario, channels, report, feasible, *e.best());
        report.allocation = *e.best();
      }
    }
  }
  return report;
}

int exit_code(OptimizeStatus status) {
  switch (status) {
    case OptimizeStatus::converged: return 0;
    case OptimizeStatus::global_infeasible: return 2;
    case OptimizeStatus::no_progress: return 3;
    case OptimizeStatus::not_converged: return 4;
  }
  return 1;
}

void print_report(std::ostream& out, const OptimizeReport& report) {
  const auto flags = out.flags();
  out << std::setw(3) << "k" << std::setw(10) << "feasible" << std::setw(14) << "p_inf_mW"
      << std::setw(14) << "p_sup_mW" << std::setw(14) << "p_star_mW" << std::setw(14) << "p_mW"
      << std::setw(14) << "EE_k" << "\n";
  out << std::setprecision(6);
  for (const auto& c : report.channels) {
    out << std::setw(3) << c.index << std::setw(10) << (c.bounds.feasible ? "yes" : "no")
        << std::setw(14) << c.bounds.p_inf << std::setw(14) << c.bounds.p_sup;
    if (c.bounds.feasible) {
      out << std::setw(14) << c.p_star << std::setw(14) << c.power << std::setw(14) << c.ee;
    }
    out << "\n";
  }
  out << "feasible channels: " << report.feasible_channels << "\n";
  if (report.allocation) {
    double sum = 0.0;
    for (double p : report.allocation->powers) sum += p;
    out << "total power (mW): " << sum << "\n"
        << "EE total: " << report.ee_total << "\n"
        << "SE total: " << report.se_total << "\n"
        << "iterations: " << report.allocation->iterations << "\n";
  }
  switch (report.status) {
    case OptimizeStatus::converged: out << "status: converged\n"; break;
    case OptimizeStatus::not_converged: out << "status: stopped outside tolerance\n"; break;
    case OptimizeStatus::global_infeasible: out << "status: global infeasible: " << report.message << "\n"; break;
    case OptimizeStatus::no_progress: out << "status: no progress: " << report.message << "\n"; break;
  }
  out.flags(flags);
}

RunConfig apply_axis(const RunConfig& cfg, const std::string& axis, double value) {
  RunConfig out = cfg;
  if (axis == "se_target") {
    out.scenario.rate_th_d2d = value;
  } else if (axis == "pg_max_dbm") {
    out.scenario.p_total_d2d = value;
    for (auto& c : out.channels) c.p_up = value - 10.0;
  } else if (axis == "lambda_g_scale") {
    for (auto& c : out.channels) c.lambda_g *= value;
  } else {
    throw std::invalid_argument("unknown sweep axis '" + axis + "'");
  }
  return out;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  if (!cfg.sweep) throw std::invalid_argument("configuration has no [sweep] section");
  const SweepSpec& spec = *cfg.sweep;
  std::vector<std::optional<double>> inner{std::nullopt};
  if (spec.axis2) {
    inner.clear();
    for (double v : spec.axis2->values()) inner.emplace_back(v);
  }

  std::vector<SweepRow> rows;
  for (double v1 : spec.axis1.values()) {
    const RunConfig outer = apply_axis(cfg, spec.axis1.name, v1);
    for (const auto& v2 : inner) {
      const RunConfig point = v2 ? apply_axis(outer, spec.axis2->name, *v2) : outer;
      const OptimizeReport r = run_optimize(point);
      SweepRow row;
      row.axis1_value = v1;
      row.axis2_value = v2;
      row.feasible_channels = r.feasible_channels;
      row.converged = r.status == OptimizeStatus::converged;
      if (r.status != OptimizeStatus::global_infeasible) {
        row.ee_total = r.ee_total;
        row.se_total = r.se_total;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis1_value,axis2_value,ee_total,se_total,feasible_channels,converged\n";
  for (const auto& r : rows) {
    out << num(r.axis1_value) << ',' << (r.axis2_value ? num(*r.axis2_value) : "") << ','
        << num(r.ee_total) << ',' << num(r.se_total) << ',' << r.feasible_channels << ','
        << (r.converged ? 1 : 0) << '\n';
  }
}

std::vector<McRow> run_validate_mc(const RunConfig& cfg) {
  validate(cfg);
  if (!cfg.mc) throw std::invalid_argument("configuration has no [mc] section");
  const McSettings& settings = *cfg.mc;
  const ScenarioConfig scenario = cfg.scenario_model();

  std::vector<ChannelParams> pairs;
  for (const auto& c : cfg.channel_models()) {
    const bool seen = std::any_of(pairs.begin(), pairs.end(), [&](const ChannelParams& p) {
      return p.lambda_c == c.lambda_c && p.lambda_g == c.lambda_g && p.p_c == c.p_c;
    });
    if (!seen) pairs.push_back(c);
  }

  std::vector<McRow> rows;
  for (Link link : settings.link) {
    for (const auto& ch : pairs) {
      for (double dbm : settings.p_g_dbm) {
        McRow row;
        row.link = link;
        row.p_g_mw = dbm_to_mw(dbm);
        row.lambda_c = ch.lambda_c;
        row.lambda_g = ch.lambda_g;
        row.seed = settings.seed;
        row.analytical = analytical_outage(scenario, ch, row.p_g_mw, link);
        McConfig mc;
        mc.trials = settings.trials;
        mc.sim_radius = settings.sim_radius;
        mc.seed = settings.seed;
        mc.link = link;
        row.estimate = estimate_outage(scenario, ch, row.p_g_mw, mc);
        row.agrees = agrees(row.estimate, row.analytical);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_mc_csv(std::ostream& out, const std::vector<McRow>& rows) {
  out << "link,p_g_mw,lambda_c,lambda_g,analytical,p_hat,half_width_95,truncation_bound,trials,seed\n";
  for (const auto& r : rows) {
    out << to_string(r.link) << ',' << num(r.p_g_mw) << ',' << num(r.lambda_c) << ','
        << num(r.lambda_g) << ',' << num(r.analytical) << ',' << num(r.estimate.p_hat) << ','
        << num(r.estimate.half_width_95) << ',' << num(r.estimate.truncation_bound) << ','
        << r.estimate.trials << ',' << r.seed << '\n';
  }
}

}  // namespace underlay
