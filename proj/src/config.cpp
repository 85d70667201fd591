// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "qpskrx/error.hpp"

namespace qpskrx {

using nlohmann::json;

namespace {

constexpr std::pair<Mode, std::string_view> kModeNames[] = {
    {Mode::Bounds, "bounds"},
    {Mode::Sweep, "sweep"},
    {Mode::DelaySweep, "delay-sweep"},
    {Mode::EfficiencySweep, "efficiency-sweep"},
    {Mode::StagesSweep, "stages-sweep"},
    {Mode::Enumerate, "enumerate"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  // Accept integral values written in floating notation (1e6).
  const double v = parse_double(key, t);
  if (std::trunc(v) != v || std::abs(v) > 9.0e15) {
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
  }
  return static_cast<std::int64_t>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
  if (t == "off" || t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(std::string(key), "expected on|off, got '" + std::string(text) + "'");
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const auto pos = text.find(sep, begin);
    parts.push_back(trim(text.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin)));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

Spacing parse_spacing(std::string_view key, std::string_view text) {
  if (text == "linear" || text == "lin") return Spacing::Linear;
  if (text == "log") return Spacing::Log;
  throw ConfigError(std::string(key), "spacing must be linear or log, got '" + std::string(text) + "'");
}

std::string_view spacing_name(Spacing s) { return s == Spacing::Log ? "log" : "linear"; }

double json_number(std::string_view key, const json& v) {
  if (!v.is_number()) throw ConfigError(std::string(key), "expected a number");
  return v.get<double>();
}

std::int64_t json_integer(std::string_view key, const json& v) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  const double d = json_number(key, v);
  if (std::trunc(d) != d) throw ConfigError(std::string(key), "expected an integer");
  return static_cast<std::int64_t>(d);
}

bool json_bool(std::string_view key, const json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) return parse_bool(key, v.get<std::string>());
  throw ConfigError(std::string(key), "expected a boolean");
}

std::string json_string(std::string_view key, const json& v) {
  if (!v.is_string()) throw ConfigError(std::string(key), "expected a string");
  return v.get<std::string>();
}

int to_int(std::string_view key, std::int64_t v) {
  if (v < -1'000'000'000 || v > 1'000'000'000) throw ConfigError(std::string(key), "value out of range");
  return static_cast<int>(v);
}

std::uint64_t to_unsigned(std::string_view key, std::int64_t v) {
  if (v < 0) throw ConfigError(std::string(key), "must be >= 0");
  return static_cast<std::uint64_t>(v);
}

// Key kinds, for converting CLI strings to JSON values.
enum class Kind { Number, Integer, Unsigned, Bool, String, NumberList, Composite };

const std::map<std::string, Kind, std::less<>>& key_kinds() {
  static const std::map<std::string, Kind, std::less<>> kinds{
      {"mode", Kind::String},           {"alpha_sq_start", Kind::Number},
      {"alpha_sq_stop", Kind::Number},  {"alpha_sq_points", Kind::Integer},
      {"alpha_sq_spacing", Kind::String}, {"m", Kind::Integer},
      {"trials", Kind::Unsigned},       {"seed", Kind::Unsigned},
      {"eta_t", Kind::Number},          {"eta_spd", Kind::Number},
      {"eta_total", Kind::Number},      {"xi", Kind::Number},
      {"nu_per_state", Kind::Number},   {"t_total_us", Kind::Number},
      {"dt_us", Kind::Number},          {"t_hold_us", Kind::Number},
      {"t_swing_us", Kind::Number},     {"truth_delay", Kind::Bool},
      {"discard_loss", Kind::Bool},     {"dt_us_start", Kind::Number},
      {"dt_us_stop", Kind::Number},     {"dt_us_points", Kind::Integer},
      {"eta_spd_list", Kind::NumberList}, {"m_min", Kind::Integer},
      {"m_max", Kind::Integer},         {"threads", Kind::Integer},
      {"enum_max_m", Kind::Integer},    {"out", Kind::String},
      {"json", Kind::Bool},             {"alpha_sq_grid", Kind::Composite},
      {"dt_us_grid", Kind::Composite},  {"m_range", Kind::Composite},
  };
  return kinds;
}

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw ConfigError(key, message);
}

void require_unit(double v, const char* key) {
  require(v >= 0.0 && v <= 1.0, key, "must lie in [0, 1], got " + json(v).dump());
}

void validate_grid(const Grid& g, const char* key) {
  require(std::isfinite(g.start) && std::isfinite(g.stop), key, "grid bounds must be finite");
  require(g.points >= 1, key, "grid needs at least one point");
  require(g.points == 1 || g.stop >= g.start, key, "grid stop must be >= start");
  if (g.spacing == Spacing::Log) require(g.start > 0.0, key, "log grid needs start > 0");
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "sweep";
}

Mode parse_mode(std::string_view name) {
  for (const auto& [m, n] : kModeNames) {
    if (n == name) return m;
  }
  throw ConfigError("mode", "unknown mode '" + std::string(name) +
                                "' (bounds, sweep, delay-sweep, efficiency-sweep, stages-sweep, enumerate)");
}

std::vector<double> Grid::values() const {
  std::vector<double> v;
  if (points <= 1) {
    v.push_back(start);
    return v;
  }
  v.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    if (i == points - 1) {
      v.push_back(stop);
    } else if (spacing == Spacing::Log) {
      v.push_back(start * std::pow(stop / start, f));
    } else {
      v.push_back((start * (points - 1 - i) + stop * i) / (points - 1));
    }
  }
  return v;
}

Grid parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() < 3 || parts.size() > 4) {
    throw ConfigError("grid", "expected start:stop:points[:log], got '" + std::string(text) + "'");
  }
  Grid g;
  g.start = parse_double("grid", parts[0]);
  g.stop = parse_double("grid", parts[1]);
  g.points = to_int("grid", parse_int("grid", parts[2]));
  if (parts.size() == 4) g.spacing = parse_spacing("grid", parts[3]);
  return g;
}

RunConfig default_config(Mode mode) {
  RunConfig c;
  c.mode = mode;
  switch (mode) {
    case Mode::Bounds:
      c.alpha_sq = {0.0, 10.0, 41, Spacing::Linear};
      break;
    case Mode::DelaySweep:
      c.alpha_sq = {3.3, 9.4, 2, Spacing::Linear};
      break;
    case Mode::StagesSweep:
      c.alpha_sq = {4.0, 4.0, 1, Spacing::Linear};
      break;
    default:
      break;
  }
  return c;
}

void apply_setting(RunConfig& c, std::string_view key, const json& v) {
  const std::string k(key);
  if (k == "mode") {
    const Mode m = parse_mode(json_string(key, v));
    if (m != c.mode) {
      throw ConfigError("mode", "file is for mode '" + std::string(to_string(m)) + "' but the run mode is '" +
                                    std::string(to_string(c.mode)) + "'");
    }
  } else if (k == "alpha_sq_start") {
    c.alpha_sq.start = json_number(key, v);
  } else if (k == "alpha_sq_stop") {
    c.alpha_sq.stop = json_number(key, v);
  } else if (k == "alpha_sq_points") {
    c.alpha_sq.points = to_int(key, json_integer(key, v));
  } else if (k == "alpha_sq_spacing") {
    c.alpha_sq.spacing = parse_spacing(key, json_string(key, v));
  } else if (k == "m") {
    c.m = to_int(key, json_integer(key, v));
  } else if (k == "trials") {
    c.trials = to_unsigned(key, json_integer(key, v));
  } else if (k == "seed") {
    if (v.is_number_unsigned()) {
      c.seed = v.get<std::uint64_t>();
    } else {
      c.seed = to_unsigned(key, json_integer(key, v));
    }
  } else if (k == "eta_t") {
    c.eta_t = json_number(key, v);
  } else if (k == "eta_spd") {
    c.eta_spd = json_number(key, v);
  } else if (k == "eta_total") {
    if (v.is_null()) {
      c.eta_total.reset();
    } else {
      c.eta_total = json_number(key, v);
    }
  } else if (k == "xi") {
    c.xi = json_number(key, v);
  } else if (k == "nu_per_state") {
    c.nu_per_state = json_number(key, v);
  } else if (k == "t_total_us") {
    c.t_total_us = json_number(key, v);
  } else if (k == "dt_us") {
    c.dt_us = json_number(key, v);
  } else if (k == "t_hold_us") {
    c.t_hold_us = json_number(key, v);
  } else if (k == "t_swing_us") {
    c.t_swing_us = json_number(key, v);
  } else if (k == "truth_delay") {
    c.truth_delay = json_bool(key, v);
  } else if (k == "discard_loss") {
    c.discard_loss = json_bool(key, v);
  } else if (k == "dt_us_start") {
    c.dt_us_grid.start = json_number(key, v);
  } else if (k == "dt_us_stop") {
    c.dt_us_grid.stop = json_number(key, v);
  } else if (k == "dt_us_points") {
    c.dt_us_grid.points = to_int(key, json_integer(key, v));
  } else if (k == "eta_spd_list") {
    if (!v.is_array()) throw ConfigError(k, "expected an array of numbers");
    std::vector<double> list;
    for (const auto& item : v) list.push_back(json_number(key, item));
    c.eta_spd_list = std::move(list);
  } else if (k == "m_min") {
    c.m_min = to_int(key, json_integer(key, v));
  } else if (k == "m_max") {
    c.m_max = to_int(key, json_integer(key, v));
  } else if (k == "threads") {
    c.threads = static_cast<unsigned>(to_int(key, static_cast<std::int64_t>(to_unsigned(key, json_integer(key, v)))));
  } else if (k == "enum_max_m") {
    c.enum_max_m = to_int(key, json_integer(key, v));
  } else if (k == "out") {
    c.out = json_string(key, v);
  } else if (k == "json") {
    c.json = json_bool(key, v);
  } else if (k == "alpha_sq_grid") {
    try {
      c.alpha_sq = parse_grid(json_string(key, v));
    } catch (const ConfigError& e) {
      throw ConfigError(k, e.what());
    }
  } else if (k == "dt_us_grid") {
    try {
      c.dt_us_grid = parse_grid(json_string(key, v));
    } catch (const ConfigError& e) {
      throw ConfigError(k, e.what());
    }
  } else if (k == "m_range") {
    const auto parts = split(json_string(key, v), ':');
    if (parts.size() != 2) throw ConfigError(k, "expected lo:hi");
    c.m_min = to_int(key, parse_int(key, parts[0]));
    c.m_max = to_int(key, parse_int(key, parts[1]));
  } else {
    throw ConfigError(k, "unknown configuration key");
  }
}

void apply_text_setting(RunConfig& c, std::string_view key, std::string_view value) {
  const auto& kinds = key_kinds();
  const auto it = kinds.find(key);
  if (it == kinds.end()) throw ConfigError(std::string(key), "unknown configuration key");
  switch (it->second) {
    case Kind::Number:
      apply_setting(c, key, json(parse_double(key, value)));
      break;
    case Kind::Integer:
      apply_setting(c, key, json(parse_int(key, value)));
      break;
    case Kind::Unsigned: {
      const std::string t = trim(value);
      std::uint64_t u = 0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), u);
      if (!t.empty() && ec == std::errc() && ptr == t.data() + t.size()) {
        apply_setting(c, key, json(u));
      } else {
        apply_setting(c, key, json(parse_int(key, value)));
      }
      break;
    }
    case Kind::Bool:
      apply_setting(c, key, json(parse_bool(key, value)));
      break;
    case Kind::NumberList: {
      json list = json::array();
      for (const auto& part : split(value, ',')) list.push_back(parse_double(key, part));
      apply_setting(c, key, list);
      break;
    }
    case Kind::String:
    case Kind::Composite:
      apply_setting(c, key, json(std::string(value)));
      break;
  }
}

void merge_config_json(RunConfig& c, const json& object) {
  if (!object.is_object()) throw ConfigError("", "configuration must be a JSON object");
  for (const auto& [key, value] : object.items()) apply_setting(c, key, value);
}

void merge_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  json doc;
  try {
    if (!text.empty() && text.front() == '#') {
      // Result file: the first line is "# " + {"config": {...}, ...}.
      const auto eol = text.find('\n');
      doc = json::parse(text.substr(1, eol == std::string::npos ? std::string::npos : eol - 1)).at("config");
    } else if (trim(text).empty()) {
      doc = json::object();
    } else {
      doc = json::parse(text);
    }
  } catch (const json::exception& e) {
    throw ConfigError("", "cannot parse config file '" + path + "': " + e.what());
  }
  merge_config_json(c, doc);
}

void validate(const RunConfig& c) {
  validate_grid(c.alpha_sq, "alpha_sq_grid");
  require(c.alpha_sq.start >= 0.0 && c.alpha_sq.stop >= 0.0, "alpha_sq_grid", "mean photon numbers must be >= 0");
  require(c.m >= 1, "m", "must be >= 1");
  require(c.trials >= 1, "trials", "must be >= 1");
  require_unit(c.eta_t, "eta_t");
  require_unit(c.eta_spd, "eta_spd");
  if (c.eta_total) require_unit(*c.eta_total, "eta_total");
  require_unit(c.xi, "xi");
  require(c.nu_per_state >= 0.0 && std::isfinite(c.nu_per_state), "nu_per_state", "must be finite and >= 0");
  require(c.t_total_us > 0.0 && std::isfinite(c.t_total_us), "t_total_us", "must be > 0");
  require(c.dt_us >= 0.0, "dt_us", "must be >= 0");
  require(c.t_hold_us >= 0.0, "t_hold_us", "must be >= 0");
  require(c.t_swing_us >= 0.0, "t_swing_us", "must be >= 0");
  require(c.enum_max_m >= 1 && c.enum_max_m <= 30, "enum_max_m", "must lie in [1, 30]");

  auto check_bin = [&](int stages, double dt, const char* key) {
    const double t_bin = c.t_total_us / stages;
    if (c.discard_loss || c.mode == Mode::DelaySweep) {
      require(dt <= t_bin, key, "discard window exceeds the bin length T/M = " + json(t_bin).dump() + " us");
    }
    if (c.truth_delay || c.mode == Mode::DelaySweep) {
      require(c.t_hold_us + c.t_swing_us <= t_bin, "t_swing_us",
              "t_hold_us + t_swing_us exceeds the bin length T/M = " + json(t_bin).dump() + " us");
    }
  };

  switch (c.mode) {
    case Mode::Enumerate:
      require(c.m <= c.enum_max_m, "m", "enumeration walks 2^M histories; M exceeds enum_max_m = " +
                                            std::to_string(c.enum_max_m));
      check_bin(c.m, c.dt_us, "dt_us");
      break;
    case Mode::Sweep:
    case Mode::Bounds:
      if (c.mode == Mode::Sweep) check_bin(c.m, c.dt_us, "dt_us");
      break;
    case Mode::EfficiencySweep:
      require(!c.eta_total.has_value(), "eta_total", "efficiency-sweep derives eta_total from eta_t * eta_spd_list");
      require(!c.eta_spd_list.empty(), "eta_spd_list", "must not be empty");
      for (double e : c.eta_spd_list) require_unit(e, "eta_spd_list");
      check_bin(c.m, c.dt_us, "dt_us");
      break;
    case Mode::DelaySweep:
      validate_grid(c.dt_us_grid, "dt_us_grid");
      require(c.dt_us_grid.start >= 0.0, "dt_us_grid", "discard times must be >= 0");
      for (double dt : c.dt_us_grid.values()) check_bin(c.m, dt, "dt_us_grid");
      break;
    case Mode::StagesSweep:
      require(c.m_min >= 1 && c.m_max >= c.m_min, "m_range", "need 1 <= m_min <= m_max");
      for (int m = c.m_min; m <= c.m_max; ++m) check_bin(m, c.dt_us, "m_range");
      break;
  }
}

json to_json(const RunConfig& c) {
  json j = json::object();
  j["mode"] = std::string(to_string(c.mode));
  j["alpha_sq_start"] = c.alpha_sq.start;
  j["alpha_sq_stop"] = c.alpha_sq.stop;
  j["alpha_sq_points"] = c.alpha_sq.points;
  j["alpha_sq_spacing"] = std::string(spacing_name(c.alpha_sq.spacing));
  j["m"] = c.m;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["eta_t"] = c.eta_t;
  j["eta_spd"] = c.eta_spd;
  j["eta_total"] = c.eta_total ? json(*c.eta_total) : json(nullptr);
  j["xi"] = c.xi;
  j["nu_per_state"] = c.nu_per_state;
  j["t_total_us"] = c.t_total_us;
  j["dt_us"] = c.dt_us;
  j["t_hold_us"] = c.t_hold_us;
  j["t_swing_us"] = c.t_swing_us;
  j["truth_delay"] = c.truth_delay;
  j["discard_loss"] = c.discard_loss;
  j["dt_us_start"] = c.dt_us_grid.start;
  j["dt_us_stop"] = c.dt_us_grid.stop;
  j["dt_us_points"] = c.dt_us_grid.points;
  j["eta_spd_list"] = c.eta_spd_list;
  j["m_min"] = c.m_min;
  j["m_max"] = c.m_max;
  j["enum_max_m"] = c.enum_max_m;
  // threads, out and json do not change results and are left out so that a
  // rerun from an echoed header reproduces the file wherever it is written.
  return j;
}

std::string config_digest(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(c).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qpskrx
