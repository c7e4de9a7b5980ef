#include "underlay/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "underlay/toml_lite.hpp"

namespace underlay {

namespace {

using toml_lite::Table;
using toml_lite::Value;

// Reads the keys of one table into typed fields, rejecting anything unknown.
class TableReader {
 public:
  explicit TableReader(const Table& t) : table_(t) {}

  void number(std::string_view key, double& out) {
    if (const Value* v = take(key)) {
      if (!v->is_number()) fail(*v, key, "expected a number");
      out = std::get<double>(v->data);
    }
  }

  void optional_number(std::string_view key, std::optional<double>& out) {
    if (const Value* v = take(key)) {
      if (!v->is_number()) fail(*v, key, "expected a number");
      out = std::get<double>(v->data);
    }
  }

  template <typename Int>
  void integer(std::string_view key, Int& out) {
    if (const Value* v = take(key)) {
      if (!v->is_number() || !v->integral) fail(*v, key, "expected an integer");
      Int x{};
      const char* first = v->token.data();
      const char* last = first + v->token.size();
      const auto [ptr, ec] = std::from_chars(first, last, x);
      if (ec != std::errc() || ptr != last) fail(*v, key, "integer out of range");
      out = x;
    }
  }

  void string(std::string_view key, std::string& out) {
    if (const Value* v = take(key)) {
      if (!v->is_string()) fail(*v, key, "expected a string");
      out = std::get<std::string>(v->data);
    }
  }

  void number_list(std::string_view key, std::vector<double>& out) {
    if (const Value* v = take(key)) {
      if (!v->is_array()) fail(*v, key, "expected an array of numbers");
      out.clear();
      for (const Value& item : std::get<Value::Array>(v->data)) {
        if (!item.is_number()) fail(item, key, "expected an array of numbers");
        out.push_back(std::get<double>(item.data));
      }
    }
  }

  void links(std::string_view key, std::vector<Link>& out) {
    if (const Value* v = take(key)) {
      std::vector<const Value*> items;
      if (v->is_string()) {
        items.push_back(v);
      } else if (v->is_array()) {
        for (const Value& item : std::get<Value::Array>(v->data)) items.push_back(&item);
      } else {
        fail(*v, key, "expected a link name or an array of link names");
      }
      out.clear();
      for (const Value* item : items) {
        if (!item->is_string()) fail(*item, key, "expected a link name");
        try {
          out.push_back(parse_link(std::get<std::string>(item->data)));
        } catch (const std::invalid_argument& e) {
          fail(*item, key, e.what());
        }
      }
    }
  }

  bool has(std::string_view key) const { return table_.find(key) != nullptr; }
  int line_of(std::string_view key) const {
    const Value* v = table_.find(key);
    return v ? v->line : table_.line;
  }

  /// Throws on the first key that no reader consumed.
  void finish() const {
    for (const auto& [key, value] : table_.entries) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        const std::string where = table_.name.empty() ? "top level" : "[" + table_.name + "]";
        throw ConfigError(value.line, "unknown key '" + key + "' in " + where);
      }
    }
  }

 private:
  const Value* take(std::string_view key) {
    const Value* v = table_.find(key);
    if (v) used_.emplace_back(key);
    return v;
  }

  [[noreturn]] void fail(const Value& v, std::string_view key, const std::string& what) const {
    throw ConfigError(v.line, std::string(key) + ": " + what);
  }

  const Table& table_;
  std::vector<std::string> used_;
};

struct FieldLines {
  std::map<std::string, int> lines;
  int at(const std::string& field) const {
    auto it = lines.find(field);
    return it == lines.end() ? 0 : it->second;
  }
};

ScenarioSettings read_scenario(const Table& t, FieldLines& lines) {
  ScenarioSettings s;
  TableReader r(t);
  r.number("alpha", s.alpha);
  r.integer("group_size", s.group_size);
  r.number("d_gr", s.d_gr);
  r.number("d_cb", s.d_cb);
  r.number("rate_th_d2d", s.rate_th_d2d);
  r.number("rate_th_cu", s.rate_th_cu);
  r.number("theta_d2d", s.theta_d2d);
  r.number("theta_cu", s.theta_cu);
  r.number("p_total_d2d", s.p_total_d2d);
  r.finish();
  for (const auto& [key, value] : t.entries) lines.lines["scenario." + key] = value.line;
  return s;
}

ChannelSettings read_channel(const Table& t, std::size_t index, FieldLines& lines) {
  ChannelSettings c;
  TableReader r(t);
  for (const char* key : {"lambda_c", "lambda_g", "p_c", "p_up"}) {
    if (!r.has(key)) {
      throw ConfigError(t.line, "channels[" + std::to_string(index) + "]: missing key '" + key + "'");
    }
  }
  r.number("lambda_c", c.lambda_c);
  r.number("lambda_g", c.lambda_g);
  r.number("p_c", c.p_c);
  r.number("p_up", c.p_up);
  r.finish();
  for (const auto& [key, value] : t.entries) {
    lines.lines["channels[" + std::to_string(index) + "]." + key] = value.line;
  }
  return c;
}

AxisSpec read_axis(const Table& t) {
  AxisSpec a;
  TableReader r(t);
  if (!r.has("name")) throw ConfigError(t.line, "[" + t.name + "]: missing key 'name'");
  r.string("name", a.name);
  r.number("from", a.from);
  r.number("to", a.to);
  r.integer("steps", a.steps);
  std::string spacing = "linear";
  r.string("spacing", spacing);
  if (spacing != "linear" && spacing != "log") {
    throw ConfigError(r.line_of("spacing"), "spacing: expected \"linear\" or \"log\"");
  }
  a.log_spacing = spacing == "log";
  r.finish();
  return a;
}

void check(bool ok, int line, const std::string& message) {
  if (!ok) throw ConfigError(line, message);
}

void validate_axis(const AxisSpec& a, const std::string& where) {
  const bool known = std::find(std::begin(kAxisNames), std::end(kAxisNames), a.name) != std::end(kAxisNames);
  check(known, 0, where + ".name: unknown axis '" + a.name + "' (expected se_target, pg_max_dbm or lambda_g_scale)");
  check(a.steps >= 2, 0, where + ".steps: must be >= 2");
  check(a.from < a.to, 0, where + ": 'from' must be smaller than 'to'");
  check(!a.log_spacing || a.from > 0.0, 0, where + ": log spacing needs from > 0");
}

void validate_impl(const RunConfig& cfg, const FieldLines& lines) {
  try {
    validate(cfg.scenario_model());
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const std::string field = what.substr(0, what.find(' '));
    throw ConfigError(lines.at("scenario." + field), "[scenario] " + what);
  }
  check(cfg.scenario.rate_th_d2d > 0.0, lines.at("scenario.rate_th_d2d"),
        "[scenario] rate_th_d2d must be > 0");
  check(cfg.scenario.rate_th_cu > 0.0, lines.at("scenario.rate_th_cu"),
        "[scenario] rate_th_cu must be > 0");
  check(!cfg.channels.empty(), 0, "at least one [[channels]] entry is required");
  for (std::size_t k = 0; k < cfg.channels.size(); ++k) {
    const std::string prefix = "channels[" + std::to_string(k) + "]";
    try {
      validate(cfg.channels[k].to_model());
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      throw ConfigError(lines.at(prefix + "." + what.substr(0, what.find(' '))), prefix + ": " + what);
    }
    check(cfg.channels[k].lambda_c + cfg.channels[k].lambda_g > 0.0, lines.at(prefix + ".lambda_c"),
          prefix + ": lambda_c + lambda_g must be > 0 (the model is interference limited)");
  }
  check(cfg.algorithm.n >= 1, 0, "[algorithm] n must be >= 1");
  check(!cfg.algorithm.epsilon || *cfg.algorithm.epsilon > 0.0, 0, "[algorithm] epsilon must be > 0");
  if (cfg.mc) {
    check(cfg.mc->trials >= 1, 0, "[mc] trials must be >= 1");
    check(!cfg.mc->sim_radius || *cfg.mc->sim_radius > 0.0, 0, "[mc] sim_radius must be > 0");
    check(!cfg.mc->link.empty(), 0, "[mc] link must name at least one link");
    check(!cfg.mc->p_g_dbm.empty(), 0, "[mc] p_g_dbm must not be empty");
  }
  if (cfg.sweep) {
    validate_axis(cfg.sweep->axis1, "[sweep.axis1]");
    if (cfg.sweep->axis2) validate_axis(*cfg.sweep->axis2, "[sweep.axis2]");
    check(!cfg.sweep->output_path.empty(), 0, "[sweep] output_path must not be empty");
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Keep it a float token so integral-looking doubles stay numbers on reload.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

void write_axis(std::ostringstream& out, const std::string& name, const AxisSpec& a) {
  out << "\n[" << name << "]\n"
      << "name = " << quote(a.name) << "\n"
      << "from = " << fmt(a.from) << "\n"
      << "to = " << fmt(a.to) << "\n"
      << "steps = " << a.steps << "\n"
      << "spacing = " << (a.log_spacing ? "\"log\"" : "\"linear\"") << "\n";
}

}  // namespace

ScenarioConfig ScenarioSettings::to_model() const {
  ScenarioConfig c;
  c.alpha = alpha;
  c.group_size = group_size;
  c.d_gr = d_gr;
  c.d_cb = d_cb;
  c.rate_th_d2d = rate_th_d2d;
  c.rate_th_cu = rate_th_cu;
  c.theta_d2d = theta_d2d;
  c.theta_cu = theta_cu;
  c.p_total_d2d = dbm_to_mw(p_total_d2d);
  return c;
}

ChannelParams ChannelSettings::to_model() const {
  return ChannelParams{lambda_c, lambda_g, dbm_to_mw(p_c), dbm_to_mw(p_up)};
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    v[i] = log_spacing ? from * std::pow(to / from, t) : from + (to - from) * t;
  }
  if (steps >= 2) v.back() = to;
  return v;
}

std::vector<ChannelParams> RunConfig::channel_models() const {
  std::vector<ChannelParams> out;
  out.reserve(channels.size());
  for (const auto& c : channels) out.push_back(c.to_model());
  return out;
}

bool RunConfig::operator==(const RunConfig& o) const {
  return scenario == o.scenario && channels == o.channels && algorithm.n == o.algorithm.n &&
         algorithm.epsilon == o.algorithm.epsilon && mc == o.mc && sweep == o.sweep;
}

RunConfig parse_config(std::string_view text) {
  toml_lite::Document doc;
  try {
    doc = toml_lite::parse(text);
  } catch (const toml_lite::ParseError& e) {
    throw ConfigError(e.line(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }

  RunConfig cfg;
  FieldLines lines;
  for (const auto& [name, table] : doc.tables) {
    if (name.empty()) {
      TableReader(table).finish();
    } else if (name == "scenario") {
      cfg.scenario = read_scenario(table, lines);
    } else if (name == "algorithm") {
      TableReader r(table);
      r.integer("n", cfg.algorithm.n);
      r.optional_number("epsilon", cfg.algorithm.epsilon);
      r.finish();
    } else if (name == "mc") {
      McSettings mc;
      TableReader r(table);
      r.integer("trials", mc.trials);
      r.optional_number("sim_radius", mc.sim_radius);
      r.integer("seed", mc.seed);
      r.links("link", mc.link);
      r.number_list("p_g_dbm", mc.p_g_dbm);
      r.finish();
      cfg.mc = mc;
    } else if (name == "sweep") {
      TableReader r(table);
      SweepSpec sweep;
      r.string("output_path", sweep.output_path);
      r.finish();
      auto a1 = doc.tables.find("sweep.axis1");
      if (a1 == doc.tables.end()) throw ConfigError(table.line, "[sweep] requires a [sweep.axis1] table");
      sweep.axis1 = read_axis(a1->second);
      auto a2 = doc.tables.find("sweep.axis2");
      if (a2 != doc.tables.end()) sweep.axis2 = read_axis(a2->second);
      cfg.sweep = sweep;
    } else if (name == "sweep.axis1" || name == "sweep.axis2") {
      if (!doc.tables.count("sweep")) throw ConfigError(table.line, "[" + name + "] needs a [sweep] table");
    } else {
      throw ConfigError(table.line, "unknown table [" + name + "]");
    }
  }
  for (const auto& [name, list] : doc.arrays) {
    if (name != "channels") throw ConfigError(list.front().line, "unknown table array [[" + name + "]]");
    for (std::size_t k = 0; k < list.size(); ++k) cfg.channels.push_back(read_channel(list[k], k, lines));
  }
  validate_impl(cfg, lines);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const RunConfig& cfg) { validate_impl(cfg, FieldLines{}); }

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream out;
  const auto& s = cfg.scenario;
  out << "[scenario]\n"
      << "alpha = " << fmt(s.alpha) << "\n"
      << "group_size = " << s.group_size << "\n"
      << "d_gr = " << fmt(s.d_gr) << "\n"
      << "d_cb = " << fmt(s.d_cb) << "\n"
      << "rate_th_d2d = " << fmt(s.rate_th_d2d) << "\n"
      << "rate_th_cu = " << fmt(s.rate_th_cu) << "\n"
      << "theta_d2d = " << fmt(s.theta_d2d) << "\n"
      << "theta_cu = " << fmt(s.theta_cu) << "\n"
      << "p_total_d2d = " << fmt(s.p_total_d2d) << "\n";
  for (const auto& c : cfg.channels) {
    out << "\n[[channels]]\n"
        << "lambda_c = " << fmt(c.lambda_c) << "\n"
        << "lambda_g = " << fmt(c.lambda_g) << "\n"
        << "p_c = " << fmt(c.p_c) << "\n"
        << "p_up = " << fmt(c.p_up) << "\n";
  }
  out << "\n[algorithm]\n" << "n = " << cfg.algorithm.n << "\n";
  if (cfg.algorithm.epsilon) out << "epsilon = " << fmt(*cfg.algorithm.epsilon) << "\n";
  if (cfg.mc) {
    const auto& mc = *cfg.mc;
    out << "\n[mc]\n" << "trials = " << mc.trials << "\n";
    if (mc.sim_radius) out << "sim_radius = " << fmt(*mc.sim_radius) << "\n";
    out << "seed = " << mc.seed << "\n" << "link = [";
    for (std::size_t i = 0; i < mc.link.size(); ++i) {
      out << (i ? ", " : "") << quote(std::string(to_string(mc.link[i])));
    }
    out << "]\n" << "p_g_dbm = [";
    for (std::size_t i = 0; i < mc.p_g_dbm.size(); ++i) out << (i ? ", " : "") << fmt(mc.p_g_dbm[i]);
    out << "]\n";
  }
  if (cfg.sweep) {
    out << "\n[sweep]\n" << "output_path = " << quote(cfg.sweep->output_path) << "\n";
    write_axis(out, "sweep.axis1", cfg.sweep->axis1);
    if (cfg.sweep->axis2) write_axis(out, "sweep.axis2", *cfg.sweep->axis2);
  }
  return out.str();
}

}  // namespace underlay
