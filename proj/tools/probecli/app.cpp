#include "probecli/app.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>

#include "gravprobe/errors.hpp"
#include "probecli/commands.hpp"

namespace probecli {

namespace {

struct Flags {
  std::string config_path;
  std::string units, out, format;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> settings;
};

// defaults < GRAVPROBE_OUT < config file < flags
RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (const char* env = std::getenv("GRAVPROBE_OUT"); env && *env) c.out = env;
  if (!f.config_path.empty()) c = load_config_file(f.config_path, c);
  if (!f.units.empty()) apply_setting(c, "units", f.units);
  if (!f.out.empty()) apply_setting(c, "out", f.out);
  if (!f.format.empty()) apply_setting(c, "format", f.format);
  if (f.workers) c.workers = *f.workers;
  if (f.seed) c.seed = *f.seed;
  for (const auto& s : f.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + s + "'");
    apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
  }
  c.validate();
  return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Fisher information of minimal-length probes: data for tables and figures",
               "probecli"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--units", f.units, "natural or si")->check(CLI::IsMember({"natural", "si", "auto"}));
  app.add_option("--out", f.out, "output directory");
  app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", f.workers, "concurrent sweep points")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "seed for randomized checks");
  app.add_option("--set", f.settings, "KEY=VALUE config override, repeatable");

  const std::map<std::string, std::pair<std::string, std::function<CommandResult(const RunConfig&)>>>
      commands{
          {"table1", {"oscillator QFI table, 1D and 2D, with weighted ratios", cmd_table1}},
          {"fsw-figure", {"finite-well ground-state QFI against V0, a and energy", cmd_fsw_figure}},
          {"ho-figure", {"oscillator superposition QFI against time", cmd_ho_figure}},
          {"comparison", {"free packet, infinite well and oscillator in SI units", cmd_comparison}},
          {"ratio-surface", {"infinite-well weighted ratio surface", cmd_ratio_surface}},
          {"validate", {"invariant and cross-check registry", cmd_validate}},
      };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const RunConfig config = resolve(f);
    CommandResult result = commands.at(name).second(config);
    const auto paths = write_result(result, config);
    for (const auto& p : paths) out << p << "\n";
    const auto& rep = result.report;
    for (const auto& r : rep.records())
      if (!r.pass) err << "FAIL " << r.name << ": rel_error " << r.rel_error << " > " << r.tolerance
                       << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
    out << name << ": " << rep.records().size() - rep.failures() << "/" << rep.records().size()
        << " checks passed\n";
    return rep.failures() ? kValidationFailed : kOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "output error: " << e.what() << "\n";
    return kConfigError;
  } catch (const gravprobe::InvalidArgument& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kConfigError;
  } catch (const gravprobe::GridResolutionError& e) {
    err << "not converged: " << e.what() << "\n";
    return kNotConverged;
  } catch (const gravprobe::TruncationError& e) {
    err << "not converged: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailed;
  }
}

}  // namespace probecli
