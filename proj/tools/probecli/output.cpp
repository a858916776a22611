#include "probecli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

namespace probecli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row width does not match columns of table " + name);
  rows.push_back(std::move(row));
}

double relative_error(double expected, double computed) {
  const double gap = std::abs(computed - expected);
  if (std::isnan(gap)) return std::numeric_limits<double>::infinity();
  return expected != 0.0 ? gap / std::abs(expected) : gap;
}

void ValidationReport::add(std::string name, double expected, double computed, double tolerance,
                           std::string detail) {
  add_measure(std::move(name), expected, computed, relative_error(expected, computed), tolerance,
              std::move(detail));
}

void ValidationReport::add_measure(std::string name, double expected, double computed,
                                   double error, double tolerance, std::string detail) {
  records_.push_back(
      {std::move(name), expected, computed, error, tolerance, error <= tolerance, std::move(detail)});
}

void ValidationReport::override_tolerance(double tol) {
  for (auto& r : records_) {
    r.tolerance = tol;
    r.pass = r.rel_error <= tol;
  }
}

std::size_t ValidationReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.pass ? 0 : 1;
  return n;
}

Table ValidationReport::to_table(const std::string& name) const {
  Table t{name,
          {{"check", "-"},
           {"expected", "1"},
           {"computed", "1"},
           {"rel_error", "1"},
           {"tolerance", "1"},
           {"pass", "-"},
           {"detail", "-"}},
          {},
          {}};
  for (const auto& r : records_)
    t.add({r.name, r.expected, r.computed, r.rel_error, r.tolerance,
           std::string(r.pass ? "pass" : "FAIL"), r.detail});
  return t;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return csv_field(std::get<std::string>(c));
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_number(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << body;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string render_table(const Table& table, OutputFormat format, const Provenance& prov) {
  if (format == OutputFormat::csv) {
    std::string body = "# probecli " + std::string(kToolVersion) + " command=" + prov.command +
                       " config_hash=" + prov.config_hash + " units=" + prov.units;
    for (const auto& [k, v] : table.metadata) body += " " + k + "=" + v;
    body += "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) body += ",";
      body += csv_field(table.columns[i].name + " [" + table.columns[i].unit + "]");
    }
    body += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) body += ",";
        body += cell_text(row[i]);
      }
      body += "\n";
    }
    return body;
  }

  nlohmann::ordered_json j;
  j["provenance"] = {{"tool", "probecli"},
                     {"version", kToolVersion},
                     {"command", prov.command},
                     {"config_hash", prov.config_hash},
                     {"units", prov.units}};
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata) j["metadata"][k] = v;
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : table.columns) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    j["rows"].push_back(std::move(r));
  }
  return j.dump(1) + "\n";
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir,
                                  OutputFormat format, const Provenance& prov) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory '" + dir.string() + "'");
  const auto path = dir / (table.name + (format == OutputFormat::csv ? ".csv" : ".json"));
  write_file(path, render_table(table, format, prov));
  return path;
}

}  // namespace probecli
