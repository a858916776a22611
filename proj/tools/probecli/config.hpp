#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gravprobe/units.hpp"

namespace probecli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

// start:stop:count, optionally :log
struct Sweep {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;
  bool log = false;

  std::vector<double> points() const;
  bool operator==(const Sweep&) const = default;
};

// closed interval lo:hi
struct Range {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const Range&) const = default;
};

struct FswConfig {
  std::vector<double> a_values{1.0, 1.5, 2.0};
  std::vector<double> v0_values{3.1622776601683795, 8.6602540378443873, 15.811388300841896};
  Sweep v0_sweep{0.2, 20.0, 200, false};
  Sweep a_sweep{0.1, 16.0, 200, false};
  bool operator==(const FswConfig&) const = default;
};

struct HoConfig {
  double omega = 1.0;
  double gamma = 1e-6;
  std::size_t truncation = 40;
  Sweep t_sweep{0.02, 10.0, 200, false};
  std::vector<int> partners{2, 3, 4};
  bool operator==(const HoConfig&) const = default;
};

// SI comparison. Momenta in MeV/c, widths in nm, frequencies in 1/s.
struct ComparisonConfig {
  double mass = 1e-27;
  double time = 1.0;
  double p0 = 1.0;
  Sweep sigma_sweep{1e-3, 100.0, 200, true};
  Sweep width_sweep{0.3, 30.0, 200, true};
  Sweep omega_sweep{1e12, 1e15, 200, true};
  Range sigma_range{0.0, 30.0};
  Range width_range{1.0, 10.0};
  Range omega_range{1e13, 1e14};
  bool operator==(const ComparisonConfig&) const = default;
};

struct RatioConfig {
  int max_n = 50;
  bool operator==(const RatioConfig&) const = default;
};

struct RunConfig {
  std::optional<gravprobe::UnitMode> units;  // unset: each command's own choice
  std::string out = "out";
  OutputFormat format = OutputFormat::csv;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  bool validation = true;
  std::optional<double> tolerance;  // overrides every report tolerance
  FswConfig fsw;
  HoConfig ho;
  ComparisonConfig cmp;
  RatioConfig ratio;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

// Applies `key = value` lines on top of `base`. '#' starts a comment.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// single assignment, same syntax as a config line
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

// every key in a fixed order, doubles at round-trip precision
std::string serialize(const RunConfig& config);

// FNV-1a over the serialized config without `out` and `workers`, which do
// not change results
std::string config_hash(const RunConfig& config);

std::string to_string(OutputFormat f);

}  // namespace probecli
