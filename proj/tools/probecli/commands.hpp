#pragma once

#include <string>
#include <vector>

#include "probecli/config.hpp"
#include "probecli/output.hpp"

namespace probecli {

struct CommandResult {
  std::string command;
  gravprobe::UnitMode units = gravprobe::UnitMode::natural;
  std::vector<Table> tables;
  ValidationReport report;
};

CommandResult cmd_table1(const RunConfig& config);
CommandResult cmd_fsw_figure(const RunConfig& config);
CommandResult cmd_ho_figure(const RunConfig& config);
CommandResult cmd_comparison(const RunConfig& config);
CommandResult cmd_ratio_surface(const RunConfig& config);
CommandResult cmd_validate(const RunConfig& config);

// applies the validation toggle and tolerance override, writes every table
// plus <command>_validation; returns the written paths
std::vector<std::string> write_result(CommandResult& result, const RunConfig& config);

// the unit mode a command runs in; throws ConfigError if the config asks
// for one the command cannot honour
gravprobe::UnitMode resolve_units(const RunConfig& config, const std::string& command);

}  // namespace probecli
