#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "probecli/config.hpp"

namespace probecli {

inline constexpr const char* kToolVersion = "1.0.0";

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless, "-" for labels and flags
};

struct Table {
  std::string name;  // file stem
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, std::string> metadata;

  void add(std::vector<Cell> row);
};

struct CheckRecord {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// pass is always rel_error <= tolerance
class ValidationReport {
 public:
  void add(std::string name, double expected, double computed, double tolerance,
           std::string detail = "");
  // for orderings and counts: `error` is already the quantity to bound
  void add_measure(std::string name, double expected, double computed, double error,
                   double tolerance, std::string detail = "");
  void override_tolerance(double tol);

  const std::vector<CheckRecord>& records() const { return records_; }
  std::size_t failures() const;
  bool empty() const { return records_.empty(); }
  Table to_table(const std::string& name) const;

 private:
  std::vector<CheckRecord> records_;
};

// |computed - expected| / |expected|, or the absolute gap when expected is 0
double relative_error(double expected, double computed);

struct Provenance {
  std::string command;
  std::string config_hash;
  std::string units;
};

std::string format_number(double v);

// file body exactly as write_table would store it
std::string render_table(const Table& table, OutputFormat format, const Provenance& prov);

// writes <dir>/<table.name>.csv or .json; returns the path
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir,
                                  OutputFormat format, const Provenance& prov);

}  // namespace probecli
