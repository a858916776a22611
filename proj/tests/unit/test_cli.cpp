#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "probecli/app.hpp"
#include "probecli/config.hpp"
#include "probecli/output.hpp"
#include "probecli/parallel.hpp"

namespace fs = std::filesystem;
using namespace probecli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "probecli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gravprobe_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv_header(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

const std::vector<std::string> kSmallFsw = {"--set", "fsw.v0_sweep=0.5:10:12", "--set",
                                            "fsw.a_sweep=0.5:4:12"};

}  // namespace

TEST_CASE("config serialization round-trips") {
  RunConfig c;
  CHECK(parse_config(serialize(c)) == c);

  c.units = gravprobe::UnitMode::si;
  c.format = OutputFormat::json;
  c.workers = 3;
  c.seed = 99;
  c.validation = false;
  c.tolerance = 1e-4;
  c.ho.omega = 0.1 + 0.2;
  c.ho.partners = {5, 7};
  c.fsw.a_values = {0.3, 1.0 / 3.0};
  c.cmp.sigma_sweep = {1e-2, 5.0, 17, true};
  c.ratio.max_n = 9;
  const RunConfig back = parse_config(serialize(c));
  CHECK(back == c);
  CHECK(serialize(back) == serialize(c));
}

TEST_CASE("config parsing accepts comments and layering") {
  const RunConfig c = parse_config("# header\n\nho.omega = 2.5  # trailing\nworkers=2\n");
  CHECK(c.ho.omega == 2.5);
  CHECK(c.workers == 2);
  const RunConfig d = parse_config("seed = 7\n", c);
  CHECK(d.ho.omega == 2.5);
  CHECK(d.seed == 7);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config("nonsense = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("ho.omega\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("ho.omega = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("format = xml\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("units = imperial\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("ho.t_sweep = 1:2\n"), ConfigError);
  RunConfig c;
  CHECK_THROWS_AS(apply_setting(c, "workers", "-1"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/gravprobe.cfg"), std::exception);
}

TEST_CASE("config hash ignores output location and worker count") {
  RunConfig a;
  RunConfig b = a;
  b.out = "elsewhere";
  b.workers = 8;
  CHECK(config_hash(a) == config_hash(b));
  b.ho.omega = 2.0;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("sweep points") {
  const Sweep lin{1.0, 3.0, 5, false};
  const auto p = lin.points();
  REQUIRE(p.size() == 5);
  CHECK(p.front() == 1.0);
  CHECK(p.back() == 3.0);
  CHECK(p[2] == doctest::Approx(2.0));
  const Sweep lg{1.0, 100.0, 3, true};
  const auto q = lg.points();
  CHECK(q[1] == doctest::Approx(10.0));
}

TEST_CASE("settings precedence: env, file, flag, set") {
  const fs::path dir = scratch("precedence");
  const fs::path env_out = dir / "from_env";
  const fs::path file_out = dir / "from_file";
  const fs::path flag_out = dir / "from_flag";
  const fs::path set_out = dir / "from_set";
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "out = " << file_out.string() << "\n";
  }

  ::setenv("GRAVPROBE_OUT", env_out.c_str(), 1);
  CHECK(invoke({"table1"}).code == 0);
  CHECK(fs::exists(env_out / "table1.csv"));

  CHECK(invoke({"--config", cfg.string(), "table1"}).code == 0);
  CHECK(fs::exists(file_out / "table1.csv"));

  CHECK(invoke({"--config", cfg.string(), "--out", flag_out.string(), "table1"}).code == 0);
  CHECK(fs::exists(flag_out / "table1.csv"));

  CHECK(invoke({"--config", cfg.string(), "--out", flag_out.string(), "--set",
                "out=" + set_out.string(), "table1"})
            .code == 0);
  CHECK(fs::exists(set_out / "table1.csv"));
  ::unsetenv("GRAVPROBE_OUT");
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("codes");
  const std::string out = dir.string();

  SUBCASE("success") {
    const Run r = invoke({"--out", out, "table1"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("checks passed") != std::string::npos);
  }
  SUBCASE("validation failure") {
    const Run r = invoke({"--out", out, "--set", "tolerance=1e-30", "table1"});
    CHECK(r.code == kValidationFailed);
    CHECK(r.err.find("FAIL") != std::string::npos);
  }
  SUBCASE("configuration errors") {
    CHECK(invoke({"--out", out, "--units", "natural", "comparison"}).code == kConfigError);
    CHECK(invoke({"--out", out, "--set", "nonsense=1", "table1"}).code == kConfigError);
    CHECK(invoke({"--out", out, "--set", "missing_equals", "table1"}).code == kConfigError);
    CHECK(invoke({"--out", out, "--bogus-flag", "table1"}).code == kConfigError);
    CHECK(invoke({"--out", out}).code == kConfigError);
    CHECK(invoke({"--out", out, "no-such-command"}).code == kConfigError);
  }
  SUBCASE("unwritable output directory") {
    const fs::path blocker = dir / "plain_file";
    std::ofstream(blocker) << "x";
    CHECK(invoke({"--out", (blocker / "sub").string(), "table1"}).code == kConfigError);
  }
  SUBCASE("non-convergence") {
    const Run r = invoke({"--out", out, "--set", "ho.truncation=5", "--set",
                          "ho.t_sweep=0.1:1:3", "ho-figure"});
    CHECK(r.code == kNotConverged);
  }
}

TEST_CASE("process exit status matches run()") {
  const fs::path dir = scratch("process");
  const std::string base = std::string(PROBECLI_PATH) + " --out " + dir.string();
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    REQUIRE(WIFEXITED(raw));
    return WEXITSTATUS(raw);
  };
  CHECK(status(base + " table1") == 0);
  CHECK(status(base + " --set tolerance=1e-30 table1") == 1);
  CHECK(status(base + " --units natural comparison") == 2);
  CHECK(status(base + " --set ho.truncation=5 --set ho.t_sweep=0.1:1:3 ho-figure") == 3);
}

TEST_CASE("validation off writes an empty report") {
  const fs::path dir = scratch("novalidation");
  const Run r = invoke({"--out", dir.string(), "--set", "validation=off", "--set",
                        "tolerance=1e-30", "table1"});
  CHECK(r.code == kOk);
  const auto lines = lines_of(slurp(dir / "table1_validation.csv"));
  CHECK(lines.size() == 2);
}

TEST_CASE("csv layout") {
  const fs::path dir = scratch("csv");
  REQUIRE(invoke({"--out", dir.string(), "table1"}).code == kOk);
  const std::string body = slurp(dir / "table1.csv");
  CHECK(body.find('\r') == std::string::npos);
  CHECK(body.back() == '\n');
  const auto lines = lines_of(body);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0].rfind("# probecli ", 0) == 0);
  CHECK(lines[0].find("config_hash=") != std::string::npos);
  CHECK(lines[0].find("units=natural") != std::string::npos);

  const auto header = split_csv_header(lines[1]);
  bool has_method = false;
  for (const auto& h : header) {
    CHECK(h.find(" [") != std::string::npos);
    CHECK(h.back() == ']');
    if (h.rfind("method ", 0) == 0) has_method = true;
  }
  CHECK(has_method);
  CHECK(lines[2].find("4.8750000000000000e+00") != std::string::npos);
  CHECK(lines[2].find("\"|0,0>\"") != std::string::npos);
}

TEST_CASE("si runs label si units") {
  const fs::path dir = scratch("si");
  REQUIRE(invoke({"--out", dir.string(), "comparison"}).code == kOk);
  bool any = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto first = lines_of(slurp(entry.path())).at(0);
    CHECK(first.find("units=si") != std::string::npos);
    any = true;
  }
  CHECK(any);
}

TEST_CASE("json mirrors csv") {
  const fs::path csv_dir = scratch("mirror_csv");
  const fs::path json_dir = scratch("mirror_json");
  REQUIRE(invoke({"--out", csv_dir.string(), "table1"}).code == kOk);
  REQUIRE(invoke({"--out", json_dir.string(), "--format", "json", "table1"}).code == kOk);
  const auto doc = nlohmann::json::parse(slurp(json_dir / "table1.json"));
  const auto csv = lines_of(slurp(csv_dir / "table1.csv"));
  const auto header = split_csv_header(csv[1]);
  REQUIRE(doc.contains("columns"));
  REQUIRE(doc.contains("rows"));
  REQUIRE(doc["columns"].size() == header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = doc["columns"][i]["name"];
    const std::string unit = doc["columns"][i]["unit"];
    CHECK(header[i] == name + " [" + unit + "]");
  }
  CHECK(doc["rows"].size() == csv.size() - 2);
  CHECK(doc["rows"][0][3].get<double>() == 4.875);
}

TEST_CASE("format_number keeps full precision") {
  CHECK(format_number(1.0) == "1.0000000000000000e+00");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_number(v)) == v);
  CHECK(relative_error(0.0, 1e-3) == doctest::Approx(1e-3));
  CHECK(relative_error(2.0, 3.0) == doctest::Approx(0.5));
}

TEST_CASE("validation report pass rule and override") {
  ValidationReport r;
  r.add("a", 1.0, 1.0 + 1e-8, 1e-6);
  r.add("b", 1.0, 1.1, 1e-6);
  CHECK(r.failures() == 1);
  r.override_tolerance(0.2);
  CHECK(r.failures() == 0);
  for (const auto& rec : r.records()) CHECK(rec.pass == (rec.rel_error <= rec.tolerance));
}

TEST_CASE("parallel_map keeps order and rethrows the first error") {
  const auto v = parallel_map(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  CHECK_THROWS_WITH(parallel_map(20, 3,
                                 [](std::size_t i) -> int {
                                   if (i == 5) throw std::runtime_error("five");
                                   if (i == 12) throw std::runtime_error("twelve");
                                   return 0;
                                 }),
                    "five");
}

TEST_CASE("output is byte-identical across runs and worker counts") {
  const fs::path one = scratch("det_one");
  const fs::path again = scratch("det_again");
  const fs::path three = scratch("det_three");
  auto args = [&](const fs::path& dir, const std::string& workers) {
    std::vector<std::string> a{"--out", dir.string(), "--workers", workers};
    a.insert(a.end(), kSmallFsw.begin(), kSmallFsw.end());
    a.push_back("fsw-figure");
    return a;
  };
  invoke(args(one, "1"));
  invoke(args(again, "1"));
  invoke(args(three, "3"));
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(one)) {
    const auto name = entry.path().filename();
    CHECK(slurp(entry.path()) == slurp(again / name));
    CHECK(slurp(entry.path()) == slurp(three / name));
    ++compared;
  }
  CHECK(compared >= 3);

  const fs::path r1 = scratch("ratio_one");
  const fs::path r4 = scratch("ratio_four");
  REQUIRE(invoke({"--out", r1.string(), "--set", "ratio.max_n=8", "ratio-surface"}).code == kOk);
  REQUIRE(invoke({"--out", r4.string(), "--workers", "4", "--set", "ratio.max_n=8",
                  "ratio-surface"})
              .code == kOk);
  for (const auto& entry : fs::directory_iterator(r1))
    CHECK(slurp(entry.path()) == slurp(r4 / entry.path().filename()));
}
