#include "gqtoda/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gqtoda/errors.hpp"
#include "gqtoda/random.hpp"

namespace gqtoda::cli {

namespace {

constexpr int kMaxModes = 3;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Location {
  const std::string& source;
  int line;
  const std::string& key;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + key + ": " + what);
  }
};

double parse_double(const std::string& v, const Location& at) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    at.fail("expected a finite number, got '" + v + "'");
  }
  return out;
}

long long parse_integer(const std::string& v, const Location& at) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) at.fail("expected an integer, got '" + v + "'");
  return out;
}

int parse_int_in(const std::string& v, const Location& at, long long lo, long long hi) {
  const long long n = parse_integer(v, at);
  if (n < lo || n > hi) at.fail("must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(n);
}

double parse_positive(const std::string& v, const Location& at) {
  const double d = parse_double(v, at);
  if (!(d > 0.0)) at.fail("must be positive");
  return d;
}

using Setter = std::function<void(RunConfig&, const std::string&, const Location&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"epsilon", [](RunConfig& c, const std::string& v, const Location& at) { c.epsilon = parse_positive(v, at); }},
      {"e_epsilon",
       [](RunConfig& c, const std::string& v, const Location& at) {
         c.e_epsilon = parse_double(v, at);
         if (!(*c.e_epsilon > 1.0)) at.fail("must exceed 1");
       }},
      {"modes.random",
       [](RunConfig& c, const std::string& v, const Location& at) {
         c.random_modes = parse_int_in(v, at, 1, kMaxModes);
       }},
      {"grid.y0", [](RunConfig& c, const std::string& v, const Location& at) { c.grid_y0 = parse_double(v, at); }},
      {"grid.count",
       [](RunConfig& c, const std::string& v, const Location& at) { c.grid_count = parse_int_in(v, at, 3, 1000000); }},
      {"integrator.dt",
       [](RunConfig& c, const std::string& v, const Location& at) { c.integrator.dt = parse_positive(v, at); }},
      {"integrator.t_end",
       [](RunConfig& c, const std::string& v, const Location& at) {
         c.integrator.t_end = parse_double(v, at);
         if (c.integrator.t_end < 0.0) at.fail("must be non-negative");
       }},
      {"integrator.boundary",
       [](RunConfig& c, const std::string& v, const Location& at) {
         try {
           c.integrator.boundary = boundary_from_string(v);
         } catch (const ConfigError& e) {
           at.fail(e.what());
         }
       }},
      {"integrator.output_every",
       [](RunConfig& c, const std::string& v, const Location& at) {
         c.integrator.output_every = parse_positive(v, at);
       }},
      {"output.dir", [](RunConfig& c, const std::string& v, const Location&) { c.output_dir = v; }},
      {"output.format",
       [](RunConfig& c, const std::string& v, const Location& at) {
         if (v != "csv" && v != "json") at.fail("expected csv or json, got '" + v + "'");
         c.output_format = v;
       }},
      {"seed",
       [](RunConfig& c, const std::string& v, const Location& at) {
         std::uint64_t s = 0;
         const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
         if (ec != std::errc() || ptr != v.data() + v.size()) at.fail("expected an unsigned integer, got '" + v + "'");
         c.seed = s;
       }},
      {"tol", [](RunConfig& c, const std::string& v, const Location& at) { c.tol = parse_positive(v, at); }},
      {"window.x_min", [](RunConfig& c, const std::string& v, const Location& at) { c.window.x_min = parse_double(v, at); }},
      {"window.x_max", [](RunConfig& c, const std::string& v, const Location& at) { c.window.x_max = parse_double(v, at); }},
      {"window.x_count",
       [](RunConfig& c, const std::string& v, const Location& at) { c.window.x_count = parse_int_in(v, at, 2, 100000); }},
      {"window.t_min", [](RunConfig& c, const std::string& v, const Location& at) { c.window.t_min = parse_double(v, at); }},
      {"window.t_max", [](RunConfig& c, const std::string& v, const Location& at) { c.window.t_max = parse_double(v, at); }},
      {"window.t_count",
       [](RunConfig& c, const std::string& v, const Location& at) { c.window.t_count = parse_int_in(v, at, 2, 100000); }},
      {"hierarchy.max_band",
       [](RunConfig& c, const std::string& v, const Location& at) {
         c.hierarchy.limits.max_band = parse_int_in(v, at, 1, 64);
       }},
      {"hierarchy.max_power",
       [](RunConfig& c, const std::string& v, const Location& at) {
         c.hierarchy.limits.max_power = parse_int_in(v, at, 1, 32);
       }},
      {"hierarchy.samples",
       [](RunConfig& c, const std::string& v, const Location& at) { c.hierarchy.samples = parse_int_in(v, at, 1, 100000); }},
      {"hierarchy.x_min",
       [](RunConfig& c, const std::string& v, const Location& at) { c.hierarchy.x_min = parse_double(v, at); }},
      {"hierarchy.x_max",
       [](RunConfig& c, const std::string& v, const Location& at) { c.hierarchy.x_max = parse_double(v, at); }},
      {"residual.samples",
       [](RunConfig& c, const std::string& v, const Location& at) { c.residual.samples = parse_int_in(v, at, 2, 100000); }},
      {"residual.min_abs_x",
       [](RunConfig& c, const std::string& v, const Location& at) {
         c.residual.min_abs_x = parse_double(v, at);
         if (c.residual.min_abs_x < 0.0) at.fail("must be non-negative");
       }},
  };
  return table;
}

// mode.N.field, 1 <= N <= 3.
bool set_mode_key(std::map<int, ModeConfig>& modes, std::set<int>& has_alpha, const std::string& key,
                  const std::string& value, const Location& at) {
  if (key.rfind("mode.", 0) != 0) return false;
  const auto dot = key.find('.', 5);
  if (dot == std::string::npos) return false;
  const int index = parse_int_in(key.substr(5, dot - 5), at, 1, kMaxModes);
  const std::string field = key.substr(dot + 1);
  ModeConfig& m = modes[index];
  if (field == "alpha") {
    m.alpha = parse_double(value, at);
    if (m.alpha == 0.0) at.fail("alpha must be non-zero");
    has_alpha.insert(index);
  } else if (field == "beta_sign") {
    const long long s = parse_integer(value, at);
    if (s != 1 && s != -1) at.fail("beta_sign must be 1 or -1");
    m.beta_sign = static_cast<int>(s);
  } else if (field == "eta") {
    m.eta = parse_double(value, at);
  } else if (field == "beta") {
    m.beta = parse_double(value, at);
  } else {
    at.fail("unknown mode field '" + field + "'");
  }
  return true;
}

void check_consistency(const RunConfig& c, const std::string& source) {
  auto fail = [&](const std::string& what) { throw ConfigError(source + ": " + what); };
  if (c.epsilon.has_value() == c.e_epsilon.has_value()) fail("exactly one of epsilon / e_epsilon must be given");
  if (c.random_modes > 0 && !c.modes.empty()) fail("modes.random cannot be combined with explicit mode.N keys");
  if (!(c.window.x_min < c.window.x_max)) fail("window.x_min must be below window.x_max");
  if (!(c.window.t_min < c.window.t_max)) fail("window.t_min must be below window.t_max");
  if (!(c.hierarchy.x_min < c.hierarchy.x_max)) fail("hierarchy.x_min must be below hierarchy.x_max");
}

}  // namespace

ShiftParams RunConfig::params() const {
  if (epsilon.has_value() == e_epsilon.has_value()) {
    throw ConfigError("exactly one of epsilon / e_epsilon must be given");
  }
  return epsilon ? ShiftParams(*epsilon) : ShiftParams::from_exp(*e_epsilon);
}

SolitonSpec RunConfig::spec() const {
  const ShiftParams p = params();
  if (random_modes > 0) {
    Rng rng(seed);
    return random_soliton_spec(rng, random_modes, default_random_window(), true, p);
  }
  if (modes.empty()) throw ConfigError("no modes given (set mode.1.alpha, ... or modes.random)");
  std::vector<SolitonMode> out;
  for (const ModeConfig& m : modes) {
    SolitonMode s = make_mode(m.alpha, p, m.beta_sign, m.eta);
    if (m.beta) s.beta = *m.beta;
    out.push_back(s);
  }
  return SolitonSpec(p, std::move(out));
}

bool RunConfig::has_explicit_beta() const {
  for (const ModeConfig& m : modes) {
    if (m.beta) return true;
  }
  return false;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::map<int, ModeConfig> modes;
  std::set<int> has_alpha;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = raw;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line) + ": expected 'key = value', got '" + text + "'");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    const Location at{source, line, key};
    if (key.empty()) at.fail("empty key");
    if (!seen.insert(key).second) at.fail("duplicate key");
    if (key.rfind("derived.", 0) == 0) continue;  // written by `soliton`, recomputed on every run
    if (value.empty()) at.fail("empty value");
    if (const auto it = setters().find(key); it != setters().end()) {
      it->second(cfg, value, at);
    } else if (!set_mode_key(modes, has_alpha, key, value, at)) {
      at.fail("unknown key");
    }
  }
  int expected = 1;
  for (const auto& [index, m] : modes) {
    if (index != expected) throw ConfigError(source + ": mode indices must be 1, 2, ... without gaps");
    if (!has_alpha.count(index)) throw ConfigError(source + ": mode." + std::to_string(index) + ".alpha is missing");
    cfg.modes.push_back(m);
    ++expected;
  }
  check_consistency(cfg, source);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  auto put = [&](const std::string& key, const std::string& value) { out << key << " = " << value << '\n'; };
  auto num = [&](const std::string& key, double v) { put(key, format_number(v)); };
  if (c.epsilon) num("epsilon", *c.epsilon);
  if (c.e_epsilon) num("e_epsilon", *c.e_epsilon);
  if (c.random_modes > 0) put("modes.random", std::to_string(c.random_modes));
  for (std::size_t i = 0; i < c.modes.size(); ++i) {
    const std::string prefix = "mode." + std::to_string(i + 1) + ".";
    num(prefix + "alpha", c.modes[i].alpha);
    put(prefix + "beta_sign", std::to_string(c.modes[i].beta_sign));
    num(prefix + "eta", c.modes[i].eta);
    if (c.modes[i].beta) num(prefix + "beta", *c.modes[i].beta);
  }
  num("grid.y0", c.grid_y0);
  put("grid.count", std::to_string(c.grid_count));
  num("integrator.dt", c.integrator.dt);
  num("integrator.t_end", c.integrator.t_end);
  put("integrator.boundary", to_string(c.integrator.boundary));
  num("integrator.output_every", c.integrator.output_every);
  if (!c.output_dir.empty()) put("output.dir", c.output_dir);
  put("output.format", c.output_format);
  put("seed", std::to_string(c.seed));
  if (c.tol) num("tol", *c.tol);
  num("window.x_min", c.window.x_min);
  num("window.x_max", c.window.x_max);
  put("window.x_count", std::to_string(c.window.x_count));
  num("window.t_min", c.window.t_min);
  num("window.t_max", c.window.t_max);
  put("window.t_count", std::to_string(c.window.t_count));
  put("hierarchy.max_band", std::to_string(c.hierarchy.limits.max_band));
  put("hierarchy.max_power", std::to_string(c.hierarchy.limits.max_power));
  put("hierarchy.samples", std::to_string(c.hierarchy.samples));
  num("hierarchy.x_min", c.hierarchy.x_min);
  num("hierarchy.x_max", c.hierarchy.x_max);
  put("residual.samples", std::to_string(c.residual.samples));
  num("residual.min_abs_x", c.residual.min_abs_x);
  return out.str();
}

}  // namespace gqtoda::cli
