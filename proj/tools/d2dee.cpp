// d2dee: outage, energy-efficiency optimisation and sweeps for D2D multicast
// groups underlaying a cellular uplink.
//
//   d2dee config-check --config configs/default.toml
//   d2dee outage       --config configs/default.toml [--p-dbm 10]
//   d2dee optimize     --config configs/default.toml
//   d2dee sweep        --config configs/sweep_se_target.toml --out ee_vs_se.csv
//   d2dee validate-mc  --config configs/default.toml --trials 50000 --seed 7 --out mc.csv

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "underlay/config.hpp"
#include "underlay/experiments.hpp"

namespace {

using namespace underlay;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<double> p_dbm;
};

int write_or_print(const std::string& path, const std::string& what,
                   const std::function<void(std::ostream&)>& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << what << " to '" << path << "'\n";
    return 1;
  }
  emit(out);
  out.flush();
  if (!out) {
    std::cerr << "error: failed while writing '" << path << "'\n";
    return 1;
  }
  return 0;
}

int cmd_config_check(const Options& opt) {
  const RunConfig cfg = load_config(opt.config);
  std::cout << "ok: " << cfg.channels.size() << " channel(s)\n" << to_config_text(cfg);
  return 0;
}

int cmd_outage(const Options& opt) {
  const RunConfig cfg = load_config(opt.config);
  const ScenarioConfig scenario = cfg.scenario_model();
  std::cout << "chi_d2d = " << std::setprecision(10) << chi_d2d(scenario)
            << "\nchi_cu  = " << chi_cu(scenario) << "\n";
  std::cout << std::setw(3) << "k" << std::setw(14) << "p_g_mW" << std::setw(16) << "outage_d2d"
            << std::setw(16) << "outage_cu" << "\n";
  const auto channels = cfg.channel_models();
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const double p = opt.p_dbm ? dbm_to_mw(*opt.p_dbm) : channels[k].p_up;
    std::cout << std::setw(3) << k << std::setw(14) << std::setprecision(6) << p
              << std::setw(16) << std::setprecision(8) << outage_d2d(scenario, channels[k], p)
              << std::setw(16) << outage_cu(scenario, channels[k], p) << "\n";
  }
  return 0;
}

int cmd_optimize(const Options& opt) {
  const RunConfig cfg = load_config(opt.config);
  const OptimizeReport report = run_optimize(cfg);
  print_report(std::cout, report);
  return exit_code(report.status);
}

int cmd_sweep(const Options& opt) {
  const RunConfig cfg = load_config(opt.config);
  if (!cfg.sweep) {
    std::cerr << "error: config has no [sweep] section\n";
    return 1;
  }
  const auto rows = run_sweep(cfg);
  const std::string path = opt.out.empty() ? cfg.sweep->output_path : opt.out;
  const int rc = write_or_print(path, "sweep CSV", [&](std::ostream& o) { write_sweep_csv(o, rows); });
  if (rc == 0 && path != "-") std::cerr << rows.size() << " rows written to " << path << "\n";
  return rc;
}

int cmd_validate_mc(const Options& opt) {
  RunConfig cfg = load_config(opt.config);
  if (!cfg.mc) cfg.mc = McSettings{};
  if (opt.seed) cfg.mc->seed = *opt.seed;
  if (opt.trials) cfg.mc->trials = *opt.trials;
  const auto rows = run_validate_mc(cfg);
  const int rc = write_or_print(opt.out, "Monte Carlo CSV", [&](std::ostream& o) { write_mc_csv(o, rows); });
  if (rc != 0) return rc;
  int disagreements = 0;
  for (const auto& r : rows) {
    if (!r.agrees) {
      ++disagreements;
      std::cerr << "disagreement: link=" << to_string(r.link) << " p_g_mw=" << r.p_g_mw
                << " lambda_c=" << r.lambda_c << " lambda_g=" << r.lambda_g
                << " analytical=" << r.analytical << " p_hat=" << r.estimate.p_hat << "\n";
    }
  }
  std::cerr << rows.size() - disagreements << "/" << rows.size() << " grid points agree\n";
  return disagreements == 0 ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D2D multicast underlay: outage, energy-efficiency optimisation and sweeps"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Run configuration (TOML subset)")->required()->check(CLI::ExistingFile);
  };

  auto* check = app.add_subcommand("config-check", "Validate a config and print its canonical form");
  add_common(check);
  auto* outage = app.add_subcommand("outage", "Print closed-form outage probabilities per channel");
  add_common(outage);
  outage->add_option("--p-dbm", opt.p_dbm, "D2D transmit power in dBm (default: each channel's p_up)");
  auto* optimize = app.add_subcommand("optimize", "Allocate D2D powers to maximise total energy efficiency");
  add_common(optimize);
  auto* sweep = app.add_subcommand("sweep", "Run the configured parameter sweep and write CSV");
  add_common(sweep);
  sweep->add_option("--out", opt.out, "Output CSV path ('-' for stdout; default: [sweep] output_path)");
  auto* mc = app.add_subcommand("validate-mc", "Check closed-form outage against Monte Carlo");
  add_common(mc);
  mc->add_option("--out", opt.out, "Output CSV path (default: stdout)");
  mc->add_option("--seed", opt.seed, "Override [mc] seed");
  mc->add_option("--trials", opt.trials, "Override [mc] trials")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every usage error exits 1 like any other failure.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*check) return cmd_config_check(opt);
    if (*outage) return cmd_outage(opt);
    if (*optimize) return cmd_optimize(opt);
    if (*sweep) return cmd_sweep(opt);
    if (*mc) return cmd_validate_mc(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
