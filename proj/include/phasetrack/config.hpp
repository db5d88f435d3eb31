#pragma once

// Strict JSON scenario files. Every key is optional; defaults are the
// operating point of the time-domain demonstration (kappa 1.9e4 rad^2/s,
// lambda 5.9e4 rad/s, |alpha|^2 1e6 /s, r_m 0.36, r_p 0.59, eta 0.85).
// Unknown keys are rejected.

#include "phasetrack/lab.hpp"

#include <optional>
#include <string>
#include <vector>

namespace phasetrack::config {

/// Per-command inputs that are not part of the scenario itself.
struct CommandOptions {
  std::vector<double> alpha_sq_list{1.0e6, 2.5e6, 5.0e6, 1.0e7};
  lab::LevelList levels;                    ///< (r_m, r_p); empty = default ladder
  std::vector<double> heatmap_squeezing_db; ///< empty = 0 to -12 dB in 0.5 dB steps
  std::vector<double> heatmap_antisqueezing_db;
  double l_sq = 0.33;       ///< loss curve for heatmap and optimize
  std::optional<double> delta_omega_override;
  bool monte_carlo = true;  ///< sweeps: run Monte Carlo next to the closed forms
  int trajectory_stride = 1; ///< simulate: keep every n-th sample
};

struct RunConfig {
  lab::Scenario scenario;
  CommandOptions options;
};

/// Defaults only.
RunConfig default_config();

/// Parses and validates a JSON document. Throws ConfigError naming the
/// offending key and its accepted range.
RunConfig parse_config(const std::string &text);

/// Canonical JSON for a config: squeezing stored as r_m / r_p, all doubles
/// printed to round-trip precision, so parse_config(to_json(c)) == c.
std::string to_json(const RunConfig &cfg);

/// Sets one scalar key as if it had appeared in the document (dB keys and
/// "duration_ms" included). Throws ConfigError for unknown keys.
void set_number(RunConfig &cfg, const std::string &key, double value);

/// Units of every scalar key, as "key": "unit" JSON.
std::string units_json();

} // namespace phasetrack::config
