#include "probecli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace probecli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(key + ": not a number: '" + s + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(key + ": not an integer: '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& s) {
  const long long v = parse_int(key, s);
  if (v < 0) throw ConfigError(key + ": must be non-negative");
  return std::size_t(v);
}

bool parse_bool(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  if (t == "on" || t == "true" || t == "1") return true;
  if (t == "off" || t == "false" || t == "0") return false;
  throw ConfigError(key + ": expected on/off, got '" + s + "'");
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_double(key, p));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(int(parse_int(key, p)));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>)
      s += fmt_double(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

Sweep parse_sweep(const std::string& key, const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw ConfigError(key + ": expected start:stop:count[:log]");
  Sweep w{parse_double(key, parts[0]), parse_double(key, parts[1]), parse_count(key, parts[2]),
          false};
  if (parts.size() == 4) {
    if (parts[3] == "log")
      w.log = true;
    else if (parts[3] != "lin")
      throw ConfigError(key + ": spacing must be lin or log");
  }
  return w;
}

std::string show(const Sweep& w) {
  return fmt_double(w.start) + ":" + fmt_double(w.stop) + ":" + std::to_string(w.count) +
         (w.log ? ":log" : ":lin");
}

Range parse_range(const std::string& key, const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ConfigError(key + ": expected lo:hi");
  return {parse_double(key, parts[0]), parse_double(key, parts[1])};
}

std::string show(const Range& r) { return fmt_double(r.lo) + ":" + fmt_double(r.hi); }

struct Key {
  const char* name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define DOUBLE_KEY(NAME, FIELD)                                                   \
  Key {                                                                           \
    NAME, [](RunConfig& c, const std::string& v) { c.FIELD = parse_double(NAME, v); }, \
        [](const RunConfig& c) { return fmt_double(c.FIELD); }                   \
  }
#define SWEEP_KEY(NAME, FIELD)                                                   \
  Key {                                                                          \
    NAME, [](RunConfig& c, const std::string& v) { c.FIELD = parse_sweep(NAME, v); }, \
        [](const RunConfig& c) { return show(c.FIELD); }                        \
  }
#define RANGE_KEY(NAME, FIELD)                                                   \
  Key {                                                                          \
    NAME, [](RunConfig& c, const std::string& v) { c.FIELD = parse_range(NAME, v); }, \
        [](const RunConfig& c) { return show(c.FIELD); }                        \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> k{
      {"units",
       [](RunConfig& c, const std::string& v) {
         if (v == "auto") {
           c.units.reset();
           return;
         }
         try {
           c.units = gravprobe::unit_mode_from_string(v);
         } catch (const std::exception&) {
           throw ConfigError("units: expected natural, si or auto");
         }
       },
       [](const RunConfig& c) { return c.units ? gravprobe::to_string(*c.units) : "auto"; }},
      {"out", [](RunConfig& c, const std::string& v) { c.out = v; },
       [](const RunConfig& c) { return c.out; }},
      {"format",
       [](RunConfig& c, const std::string& v) {
         if (v == "csv")
           c.format = OutputFormat::csv;
         else if (v == "json")
           c.format = OutputFormat::json;
         else
           throw ConfigError("format: expected csv or json");
       },
       [](const RunConfig& c) { return to_string(c.format); }},
      {"workers", [](RunConfig& c, const std::string& v) { c.workers = parse_count("workers", v); },
       [](const RunConfig& c) { return std::to_string(c.workers); }},
      {"seed",
       [](RunConfig& c, const std::string& v) { c.seed = std::uint64_t(parse_count("seed", v)); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"validation",
       [](RunConfig& c, const std::string& v) { c.validation = parse_bool("validation", v); },
       [](const RunConfig& c) { return std::string(c.validation ? "on" : "off"); }},
      {"tolerance",
       [](RunConfig& c, const std::string& v) {
         if (v == "default")
           c.tolerance.reset();
         else
           c.tolerance = parse_double("tolerance", v);
       },
       [](const RunConfig& c) { return c.tolerance ? fmt_double(*c.tolerance) : "default"; }},
      {"fsw.a_values",
       [](RunConfig& c, const std::string& v) { c.fsw.a_values = parse_list("fsw.a_values", v); },
       [](const RunConfig& c) { return join(c.fsw.a_values); }},
      {"fsw.v0_values",
       [](RunConfig& c, const std::string& v) { c.fsw.v0_values = parse_list("fsw.v0_values", v); },
       [](const RunConfig& c) { return join(c.fsw.v0_values); }},
      SWEEP_KEY("fsw.v0_sweep", fsw.v0_sweep),
      SWEEP_KEY("fsw.a_sweep", fsw.a_sweep),
      DOUBLE_KEY("ho.omega", ho.omega),
      DOUBLE_KEY("ho.gamma", ho.gamma),
      {"ho.truncation",
       [](RunConfig& c, const std::string& v) { c.ho.truncation = parse_count("ho.truncation", v); },
       [](const RunConfig& c) { return std::to_string(c.ho.truncation); }},
      SWEEP_KEY("ho.t_sweep", ho.t_sweep),
      {"ho.partners",
       [](RunConfig& c, const std::string& v) { c.ho.partners = parse_int_list("ho.partners", v); },
       [](const RunConfig& c) { return join(c.ho.partners); }},
      DOUBLE_KEY("cmp.mass", cmp.mass),
      DOUBLE_KEY("cmp.time", cmp.time),
      DOUBLE_KEY("cmp.p0", cmp.p0),
      SWEEP_KEY("cmp.sigma_sweep", cmp.sigma_sweep),
      SWEEP_KEY("cmp.width_sweep", cmp.width_sweep),
      SWEEP_KEY("cmp.omega_sweep", cmp.omega_sweep),
      RANGE_KEY("cmp.sigma_range", cmp.sigma_range),
      RANGE_KEY("cmp.width_range", cmp.width_range),
      RANGE_KEY("cmp.omega_range", cmp.omega_range),
      {"ratio.max_n",
       [](RunConfig& c, const std::string& v) { c.ratio.max_n = int(parse_int("ratio.max_n", v)); },
       [](const RunConfig& c) { return std::to_string(c.ratio.max_n); }},
  };
  return k;
}

#undef DOUBLE_KEY
#undef SWEEP_KEY
#undef RANGE_KEY

void check_sweep(const std::string& name, const Sweep& w, bool allow_zero_start = false) {
  if (w.count < 2) throw ConfigError(name + ": sweep count must be at least 2");
  if (!(w.start < w.stop)) throw ConfigError(name + ": sweep start must be below stop");
  if (!std::isfinite(w.start) || !std::isfinite(w.stop)) throw ConfigError(name + ": not finite");
  if (w.start < 0 || (w.start == 0 && (!allow_zero_start || w.log)))
    throw ConfigError(name + ": values must be strictly positive");
}

void check_positive(const std::string& name, double v) {
  if (!(v > 0) || !std::isfinite(v)) throw ConfigError(name + ": must be strictly positive");
}

void check_range(const std::string& name, const Range& r) {
  if (!(r.lo < r.hi) || r.lo < 0) throw ConfigError(name + ": need 0 <= lo < hi");
}

}  // namespace

std::vector<double> Sweep::points() const {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = count > 1 ? double(i) / double(count - 1) : 0.0;
    xs[i] = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                : start + f * (stop - start);
  }
  xs.front() = start;
  if (count > 1) xs.back() = stop;
  return xs;
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

void RunConfig::validate() const {
  if (out.empty()) throw ConfigError("out: empty output directory");
  if (workers < 1) throw ConfigError("workers: must be at least 1");
  if (tolerance && !(*tolerance >= 0)) throw ConfigError("tolerance: must be non-negative");
  for (double a : fsw.a_values) check_positive("fsw.a_values", a);
  for (double v : fsw.v0_values) check_positive("fsw.v0_values", v);
  check_sweep("fsw.v0_sweep", fsw.v0_sweep);
  check_sweep("fsw.a_sweep", fsw.a_sweep);
  check_positive("ho.omega", ho.omega);
  check_positive("ho.gamma", ho.gamma);
  if (ho.truncation < 2) throw ConfigError("ho.truncation: must be at least 2");
  check_sweep("ho.t_sweep", ho.t_sweep, true);
  for (int n : ho.partners)
    if (n < 2) throw ConfigError("ho.partners: partner levels start at 2");
  check_positive("cmp.mass", cmp.mass);
  check_positive("cmp.time", cmp.time);
  check_positive("cmp.p0", cmp.p0);
  check_sweep("cmp.sigma_sweep", cmp.sigma_sweep);
  check_sweep("cmp.width_sweep", cmp.width_sweep);
  check_sweep("cmp.omega_sweep", cmp.omega_sweep);
  check_range("cmp.sigma_range", cmp.sigma_range);
  check_range("cmp.width_range", cmp.width_range);
  check_range("cmp.omega_range", cmp.omega_range);
  if (ratio.max_n < 2 || ratio.max_n > 50) throw ConfigError("ratio.max_n: must be in [2, 50]");
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  for (const auto& k : keys()) {
    if (key == k.name) {
      k.set(config, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string serialize(const RunConfig& config) {
  std::string s;
  for (const auto& k : keys()) s += std::string(k.name) + " = " + k.get(config) + "\n";
  return s;
}

std::string config_hash(const RunConfig& config) {
  RunConfig c = config;
  c.out = "-";
  c.workers = 1;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace probecli
