#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "underlay/allocator.hpp"
#include "underlay/model.hpp"
#include "underlay/monte_carlo.hpp"

namespace underlay {

/// Scenario as written in a config file: identical to ScenarioConfig except
/// that the power budget is in dBm.
struct ScenarioSettings {
  double alpha = 3.0;
  int group_size = 3;
  double d_gr = 2.0;
  double d_cb = 8.0;
  double rate_th_d2d = 3.0;
  double rate_th_cu = 1.0;
  double theta_d2d = 0.1;
  double theta_cu = 0.1;
  double p_total_d2d = 25.0;  // dBm

  ScenarioConfig to_model() const;
  bool operator==(const ScenarioSettings&) const = default;
};

struct ChannelSettings {
  double lambda_c = 0.0;
  double lambda_g = 0.0;
  double p_c = 26.0;   // dBm
  double p_up = 15.0;  // dBm

  ChannelParams to_model() const;
  bool operator==(const ChannelSettings&) const = default;
};

struct McSettings {
  std::int64_t trials = 50000;
  std::optional<double> sim_radius;
  std::uint64_t seed = 1;
  std::vector<Link> link = {Link::d2d, Link::cellular};
  std::vector<double> p_g_dbm = {5.0, 10.0, 15.0};

  bool operator==(const McSettings&) const = default;
};

struct AxisSpec {
  std::string name;  // se_target | pg_max_dbm | lambda_g_scale
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  bool log_spacing = false;

  std::vector<double> values() const;
  bool operator==(const AxisSpec&) const = default;
};

struct SweepSpec {
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  std::string output_path = "sweep.csv";

  bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
  ScenarioSettings scenario;
  std::vector<ChannelSettings> channels;
  AlgorithmParams algorithm;
  std::optional<McSettings> mc;
  std::optional<SweepSpec> sweep;

  ScenarioConfig scenario_model() const { return scenario.to_model(); }
  std::vector<ChannelParams> channel_models() const;
  bool operator==(const RunConfig& o) const;
};

/// Parse or validation failure. line() is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError naming the field and the violated constraint.
void validate(const RunConfig& cfg);

/// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& cfg);

inline constexpr std::string_view kAxisNames[] = {"se_target", "pg_max_dbm", "lambda_g_scale"};

}  // namespace underlay
