#include "underlay/config.hpp"
#include "underlay/toml_lite.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

namespace underlay {
namespace {

const std::string kDir = CONFIG_DIR;

const std::string kMinimal = R"(
[scenario]
alpha = 3.0

[[channels]]
lambda_c = 1e-4
lambda_g = 1e-3
p_c = 26.0
p_up = 15.0
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

// Returns the error message, or "" if parsing succeeded.
std::string error_of(const std::string& text, int* line = nullptr) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    if (line) *line = e.line();
    return e.what();
  }
  return "";
}

TEST(DefaultConfigTest, LoadsReferenceScenario) {
  const RunConfig cfg = load_config(kDir + "/default.toml");
  ASSERT_EQ(cfg.channels.size(), 5u);
  const double lc[] = {1e-4, 1e-5, 1e-4, 1e-4, 1e-4};
  const double lg[] = {1e-3, 1e-4, 1e-3, 1e-3, 1e-3};
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(cfg.channels[k].lambda_c, lc[k]);
    EXPECT_EQ(cfg.channels[k].lambda_g, lg[k]);
    EXPECT_EQ(cfg.channels[k].p_c, 26.0);
    EXPECT_EQ(cfg.channels[k].p_up, 15.0);
  }
  EXPECT_EQ(cfg.scenario.alpha, 3.0);
  EXPECT_EQ(cfg.scenario.group_size, 3);
  EXPECT_EQ(cfg.scenario.theta_d2d, 0.1);
  EXPECT_EQ(cfg.scenario.theta_cu, 0.1);
  EXPECT_NEAR(cfg.scenario_model().p_total_d2d, 316.22776601683793, 1e-11);
  EXPECT_EQ(cfg.algorithm.n, 1000);
  ASSERT_TRUE(cfg.mc.has_value());
  EXPECT_EQ(cfg.mc->link.size(), 2u);
  EXPECT_FALSE(cfg.sweep.has_value());
}

TEST(DefaultConfigTest, SweepConfigsLoad) {
  const RunConfig by_se = load_config(kDir + "/sweep_se_target.toml");
  ASSERT_TRUE(by_se.sweep && by_se.sweep->axis2);
  EXPECT_EQ(by_se.sweep->axis1.name, "pg_max_dbm");
  EXPECT_EQ(by_se.sweep->axis2->name, "se_target");
  const RunConfig by_density = load_config(kDir + "/sweep_density.toml");
  ASSERT_TRUE(by_density.sweep);
  EXPECT_TRUE(by_density.sweep->axis1.log_spacing);
  EXPECT_FALSE(by_density.sweep->axis2);
}

TEST(ConfigErrorTest, MissingFile) {
  EXPECT_THROW(load_config(kDir + "/does_not_exist.toml"), ConfigError);
}

TEST(ConfigErrorTest, AlphaAtPole) {
  int line = 0;
  const std::string msg = error_of(replace(kMinimal, "alpha = 3.0", "alpha = 2.0"), &line);
  EXPECT_NE(msg.find("alpha"), std::string::npos) << msg;
  EXPECT_NE(msg.find("pole"), std::string::npos) << msg;
  EXPECT_EQ(line, 3);
}

TEST(ConfigErrorTest, OutageTargetOutsideUnitInterval) {
  const std::string msg = error_of(replace(kMinimal, "alpha = 3.0", "theta_cu = 1.0"));
  EXPECT_NE(msg.find("theta_cu"), std::string::npos) << msg;
  EXPECT_NE(error_of(replace(kMinimal, "alpha = 3.0", "theta_d2d = 0.0")).find("theta_d2d"),
            std::string::npos);
}

TEST(ConfigErrorTest, UnknownKeyNamed) {
  int line = 0;
  const std::string msg = error_of(replace(kMinimal, "alpha = 3.0", "alpha = 3.0\nbeta = 1"), &line);
  EXPECT_NE(msg.find("'beta'"), std::string::npos) << msg;
  EXPECT_EQ(line, 4);
  EXPECT_NE(error_of(kMinimal + "\n[extras]\nx = 1\n").find("[extras]"), std::string::npos);
}

TEST(ConfigErrorTest, MissingChannelKey) {
  const std::string msg = error_of(replace(kMinimal, "p_up = 15.0", ""));
  EXPECT_NE(msg.find("p_up"), std::string::npos) << msg;
  EXPECT_NE(msg.find("channels[0]"), std::string::npos) << msg;
}

TEST(ConfigErrorTest, NoChannels) {
  EXPECT_NE(error_of("[scenario]\nalpha = 3.0\n").find("channels"), std::string::npos);
}

TEST(ConfigErrorTest, PureNoiseChannelRejected) {
  const std::string text = replace(replace(kMinimal, "lambda_c = 1e-4", "lambda_c = 0"),
                                   "lambda_g = 1e-3", "lambda_g = 0");
  EXPECT_NE(error_of(text).find("lambda_c + lambda_g"), std::string::npos);
}

TEST(ConfigErrorTest, SyntaxErrorsCarryLine) {
  int line = 0;
  EXPECT_NE(error_of(replace(kMinimal, "p_c = 26.0", "p_c = = 26.0"), &line), "");
  EXPECT_EQ(line, 8);
  EXPECT_NE(error_of(replace(kMinimal, "[scenario]", "[scenario"), &line), "");
  EXPECT_EQ(line, 2);
  EXPECT_NE(error_of(replace(kMinimal, "alpha = 3.0", "alpha = 3.0\nalpha = 4.0"), &line), "");
  EXPECT_EQ(line, 4);
}

TEST(ConfigErrorTest, WrongTypes) {
  EXPECT_NE(error_of(replace(kMinimal, "alpha = 3.0", "alpha = \"three\"")).find("expected a number"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kMinimal, "alpha = 3.0", "group_size = 2.5")).find("integer"),
            std::string::npos);
  EXPECT_NE(error_of(kMinimal + "\n[mc]\nlink = [\"uplink\"]\n").find("uplink"), std::string::npos);
}

TEST(ConfigErrorTest, SweepAxes) {
  const std::string sweep = kMinimal + "\n[sweep]\n\n[sweep.axis1]\nname = \"se_target\"\nfrom = 1\nto = 5\nsteps = 3\n";
  EXPECT_EQ(error_of(sweep), "");
  EXPECT_NE(error_of(replace(sweep, "se_target", "bandwidth")).find("bandwidth"), std::string::npos);
  EXPECT_NE(error_of(replace(sweep, "steps = 3", "steps = 1")).find("steps"), std::string::npos);
  EXPECT_NE(error_of(replace(sweep, "to = 5", "to = 0.5")).find("from"), std::string::npos);
  EXPECT_NE(error_of(kMinimal + "\n[sweep]\n").find("axis1"), std::string::npos);
}

TEST(AxisSpecTest, LinearAndLogGrids) {
  AxisSpec a{"se_target", 1.0, 10.0, 10, false};
  const auto lin = a.values();
  ASSERT_EQ(lin.size(), 10u);
  EXPECT_EQ(lin.front(), 1.0);
  EXPECT_EQ(lin[4], 5.0);
  EXPECT_EQ(lin.back(), 10.0);
  a = {"lambda_g_scale", 0.1, 10.0, 5, true};
  const auto lg = a.values();
  EXPECT_NEAR(lg[2], 1.0, 1e-15);
  EXPECT_EQ(lg.back(), 10.0);
}

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RunConfig c;
  c.scenario.alpha = 2.01 + 4 * u(rng);
  c.scenario.group_size = 1 + static_cast<int>(10 * u(rng));
  c.scenario.d_gr = 100 * u(rng) + 1e-3;
  c.scenario.d_cb = 1000 * u(rng) + 1e-3;
  c.scenario.rate_th_d2d = 0.01 + 10 * u(rng);
  c.scenario.rate_th_cu = 0.01 + 10 * u(rng);
  c.scenario.theta_d2d = 0.001 + 0.99 * u(rng);
  c.scenario.theta_cu = 0.001 + 0.99 * u(rng);
  c.scenario.p_total_d2d = -10 + 50 * u(rng);
  const int k = 1 + static_cast<int>(6 * u(rng));
  for (int i = 0; i < k; ++i) {
    c.channels.push_back({std::pow(10.0, -7 * u(rng)), i % 3 == 0 ? 0.0 : std::pow(10.0, -7 * u(rng)),
                          std::round(40 * u(rng)), -20 + 40 * u(rng)});
  }
  c.algorithm.n = 1 + static_cast<int>(5000 * u(rng));
  if (u(rng) < 0.5) c.algorithm.epsilon = 1e-6 + u(rng);
  if (u(rng) < 0.7) {
    McSettings mc;
    mc.trials = 1 + static_cast<std::int64_t>(1e6 * u(rng));
    mc.seed = rng();
    if (u(rng) < 0.5) mc.sim_radius = 10 + 1e4 * u(rng);
    mc.link = u(rng) < 0.5 ? std::vector<Link>{Link::cellular} : std::vector<Link>{Link::d2d, Link::cellular};
    mc.p_g_dbm = {u(rng) * 20, 3.0};
    c.mc = mc;
  }
  if (u(rng) < 0.7) {
    SweepSpec s;
    s.axis1 = {std::string(kAxisNames[rng() % 3]), 0.5 + u(rng), 2 + 10 * u(rng),
               2 + static_cast<int>(20 * u(rng)), u(rng) < 0.5};
    if (u(rng) < 0.5) s.axis2 = AxisSpec{std::string(kAxisNames[rng() % 3]), 1.0, 3.0, 3, false};
    s.output_path = "out dir/\"quoted\"\\file.csv";
    c.sweep = s;
  }
  return c;
}

TEST(RoundTripTest, TextFormIsLossless) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const RunConfig c = random_config(rng);
    ASSERT_NO_THROW(validate(c));
    const std::string text = to_config_text(c);
    const RunConfig back = parse_config(text);
    EXPECT_TRUE(back == c) << text;
    EXPECT_EQ(to_config_text(back), text);
  }
}

TEST(RoundTripTest, DefaultFile) {
  const RunConfig cfg = load_config(kDir + "/default.toml");
  EXPECT_TRUE(parse_config(to_config_text(cfg)) == cfg);
}

TEST(TomlLiteTest, ValuesAndComments) {
  const auto doc = toml_lite::parse(
      "top = 1_000 # trailing\n"
      "[t]\n"
      "s = \"a # b \\\"q\\\"\"\n"
      "f = -2.5e-3\n"
      "b = true\n"
      "arr = [\n  1, 2,\n  3, # mid\n]\n"
      "[[list]]\nx = 1\n[[list]]\nx = 2\n");
  const auto& root = doc.tables.at("");
  ASSERT_NE(root.find("top"), nullptr);
  EXPECT_EQ(std::get<double>(root.find("top")->data), 1000.0);
  EXPECT_TRUE(root.find("top")->integral);
  const auto& t = doc.tables.at("t");
  EXPECT_EQ(std::get<std::string>(t.find("s")->data), "a # b \"q\"");
  EXPECT_EQ(std::get<double>(t.find("f")->data), -2.5e-3);
  EXPECT_FALSE(t.find("f")->integral);
  EXPECT_TRUE(std::get<bool>(t.find("b")->data));
  EXPECT_EQ(std::get<toml_lite::Value::Array>(t.find("arr")->data).size(), 3u);
  EXPECT_EQ(doc.arrays.at("list").size(), 2u);
  EXPECT_EQ(t.find("nope"), nullptr);
}

TEST(TomlLiteTest, Rejections) {
  const char* bad[] = {"x = \"open\n", "x = [1, 2\n", "[a]\n[a]\n", "x = 1\nx = 2\n",
                       "x = 1.2.3\n", "= 3\n", "x = {a = 1}\n", "x = 1 y\n"};
  for (const char* text : bad) {
    EXPECT_THROW(toml_lite::parse(text), toml_lite::ParseError) << text;
  }
}

}  // namespace
}  // namespace underlay
