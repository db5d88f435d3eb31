#pragma once

// The CLI commands as functions from a parsed config to a result table.

#include "phasetrack/config.hpp"
#include "phasetrack/table.hpp"

#include <string>
#include <vector>

namespace phasetrack::commands {

/// predict, simulate, mc, sweep-squeezing, sweep-alpha, heatmap, bandwidth, optimize.
const std::vector<std::string> &names();

bool is_command(const std::string &name);

/// Runs one command. `jobs` bounds the Monte Carlo worker threads.
table::Table run(const std::string &name, const config::RunConfig &cfg, int jobs = 1);

/// Metadata block for a run (seed, library version, canonical scenario).
table::Meta meta_for(const std::string &name, const config::RunConfig &cfg);

} // namespace phasetrack::commands
