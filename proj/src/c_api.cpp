#include "phasetrack/phasetrack.h"

#include "phasetrack/commands.hpp"
#include "phasetrack/config.hpp"
#include "phasetrack/error.hpp"
#include "phasetrack/estimator.hpp"
#include "phasetrack/table.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

using namespace phasetrack;

struct pt_config {
  config::RunConfig cfg;
};

struct pt_table {
  table::Table data;
  table::Meta meta;
};

namespace {

thread_local std::string g_last_error;

pt_status fail(pt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body and converts exceptions to status codes.
template <class Body> pt_status guarded(Body body) {
  try {
    body();
    return PT_OK;
  } catch (const ConfigError &e) {
    return fail(PT_ERR_CONFIG, e.what());
  } catch (const ParameterError &e) {
    return fail(PT_ERR_CONFIG, e.what());
  } catch (const DomainError &e) {
    return fail(PT_ERR_DOMAIN, e.what());
  } catch (const NumericError &e) {
    return fail(PT_ERR_DOMAIN, e.what());
  } catch (const IoError &e) {
    return fail(PT_ERR_IO, e.what());
  } catch (const std::bad_alloc &) {
    return fail(PT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(PT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PT_ERR_INTERNAL, "unknown error");
  }
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define PT_REQUIRE(cond, what)                                                                     \
  do {                                                                                             \
    if (!(cond))                                                                                   \
      return fail(PT_ERR_CONFIG, what);                                                            \
  } while (0)

} // namespace

extern "C" {

const char *pt_version(void) { return PHASETRACK_VERSION; }

const char *pt_last_error(void) { return g_last_error.c_str(); }

pt_status pt_config_new(pt_config **out) {
  PT_REQUIRE(out, "pt_config_new: null output pointer");
  return guarded([&] { *out = new pt_config{config::default_config()}; });
}

pt_status pt_config_parse(const char *json_text, pt_config **out) {
  PT_REQUIRE(json_text && out, "pt_config_parse: null argument");
  return guarded([&] { *out = new pt_config{config::parse_config(json_text)}; });
}

pt_status pt_config_load(const char *path, pt_config **out) {
  PT_REQUIRE(path && out, "pt_config_load: null argument");
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return fail(PT_ERR_IO, std::string("cannot read config file '") + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return guarded([&] {
    try {
      *out = new pt_config{config::parse_config(text.str())};
    } catch (const ConfigError &e) {
      throw ConfigError(std::string(path) + ": " + e.what());
    }
  });
}

void pt_config_free(pt_config *cfg) { delete cfg; }

pt_status pt_config_set_number(pt_config *cfg, const char *key, double value) {
  PT_REQUIRE(cfg && key, "pt_config_set_number: null argument");
  return guarded([&] {
    config::RunConfig copy = cfg->cfg;
    config::set_number(copy, key, value);
    cfg->cfg = std::move(copy);
  });
}

pt_status pt_config_to_json(const pt_config *cfg, char **out) {
  PT_REQUIRE(cfg && out, "pt_config_to_json: null argument");
  return guarded([&] { *out = dup_string(config::to_json(cfg->cfg)); });
}

void pt_string_free(char *s) { std::free(s); }

size_t pt_command_count(void) { return commands::names().size(); }

const char *pt_command_name(size_t index) {
  const auto &n = commands::names();
  return index < n.size() ? n[index].c_str() : nullptr;
}

pt_status pt_run_command(const pt_config *cfg, const char *command, int jobs, pt_table **out) {
  PT_REQUIRE(cfg && command && out, "pt_run_command: null argument");
  if (!commands::is_command(command))
    return fail(PT_ERR_CONFIG, std::string("unknown command '") + command + "'");
  return guarded([&] {
    auto t = std::make_unique<pt_table>();
    t->data = commands::run(command, cfg->cfg, jobs);
    t->meta = commands::meta_for(command, cfg->cfg);
    *out = t.release();
  });
}

void pt_table_free(pt_table *t) { delete t; }

size_t pt_table_rows(const pt_table *t) { return t ? t->data.rows.size() : 0; }

size_t pt_table_columns(const pt_table *t) { return t ? t->data.columns.size() : 0; }

const char *pt_table_column_name(const pt_table *t, size_t col) {
  if (!t || col >= t->data.columns.size())
    return nullptr;
  return t->data.columns[col].name.c_str();
}

const char *pt_table_column_unit(const pt_table *t, size_t col) {
  if (!t || col >= t->data.columns.size())
    return nullptr;
  return t->data.columns[col].unit.c_str();
}

pt_status pt_table_value(const pt_table *t, size_t row, size_t col, double *out) {
  PT_REQUIRE(t && out, "pt_table_value: null argument");
  PT_REQUIRE(row < t->data.rows.size() && col < t->data.columns.size(),
             "pt_table_value: index out of range");
  *out = t->data.rows[row][col];
  return PT_OK;
}

pt_status pt_table_serialize(const pt_table *t, const char *format, char **out) {
  PT_REQUIRE(t && format && out, "pt_table_serialize: null argument");
  return guarded([&] {
    *out = dup_string(table::serialize(t->data, t->meta, table::format_from_string(format)));
  });
}

pt_status pt_table_write(const pt_table *t, const char *format, const char *path) {
  PT_REQUIRE(t && format && path, "pt_table_write: null argument");
  return guarded(
      [&] { table::write_file(t->data, t->meta, table::format_from_string(format), path); });
}

pt_status pt_gain_explicit(double alpha_sq, double kappa, double lambda, double r_m, double r_p,
                           double *gamma) {
  PT_REQUIRE(gamma, "pt_gain_explicit: null output pointer");
  return guarded([&] {
    const sde::OUParams ou{kappa, lambda};
    ou.validate();
    optics::SqueezedBeam{alpha_sq, r_m, r_p, 1.0}.validate();
    *gamma = estimator::gain_explicit(alpha_sq, ou, r_m, r_p);
  });
}

pt_status pt_sigma_f_explicit(double alpha_sq, double kappa, double lambda, double r_m,
                              double r_p, double *sigma_f_sq) {
  PT_REQUIRE(sigma_f_sq, "pt_sigma_f_explicit: null output pointer");
  return guarded([&] {
    const sde::OUParams ou{kappa, lambda};
    ou.validate();
    optics::SqueezedBeam{alpha_sq, r_m, r_p, 1.0}.validate();
    *sigma_f_sq = estimator::sigma_f_explicit(alpha_sq, ou, r_m, r_p);
  });
}

pt_status pt_sigma_s(double alpha_sq, double kappa, double lambda, double r_bar,
                     double *sigma_s_sq) {
  PT_REQUIRE(sigma_s_sq, "pt_sigma_s: null output pointer");
  return guarded([&] {
    const sde::OUParams ou{kappa, lambda};
    ou.validate();
    *sigma_s_sq = estimator::sigma_s(alpha_sq, ou, r_bar);
  });
}

pt_status pt_optimal_squeezing(double alpha_sq, double kappa, double lambda, double l_sq,
                               double *pure_db, double *sigma_s_sq) {
  PT_REQUIRE(pure_db && sigma_s_sq, "pt_optimal_squeezing: null output pointer");
  return guarded([&] {
    const sde::OUParams ou{kappa, lambda};
    ou.validate();
    const auto best = estimator::optimal_squeezing(alpha_sq, ou, l_sq);
    *pure_db = best.pure_db;
    *sigma_s_sq = best.sigma_s_sq;
  });
}

} // extern "C"
