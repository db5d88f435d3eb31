/* C interface to the phasetrack library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a pt_status; on
 * failure pt_last_error() describes what went wrong (per thread, valid until
 * the next failing call on that thread). The numeric status values double as
 * process exit codes for the command-line tool.
 */
#ifndef PHASETRACK_H
#define PHASETRACK_H

#include <stddef.h>

#if defined(PT_BUILDING_LIBRARY)
#define PT_API __attribute__((visibility("default")))
#else
#define PT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pt_status {
  PT_OK = 0,
  PT_ERR_INTERNAL = 1,
  PT_ERR_CONFIG = 2, /* bad configuration or parameter value */
  PT_ERR_DOMAIN = 3, /* outside a formula's domain, or a numeric failure */
  PT_ERR_IO = 4
} pt_status;

typedef struct pt_config pt_config;
typedef struct pt_table pt_table;

PT_API const char *pt_version(void);
PT_API const char *pt_last_error(void);

/* Configuration. */
PT_API pt_status pt_config_new(pt_config **out);
PT_API pt_status pt_config_parse(const char *json_text, pt_config **out);
PT_API pt_status pt_config_load(const char *path, pt_config **out);
PT_API void pt_config_free(pt_config *cfg);
/* Any scalar config key, e.g. "alpha_sq", "squeezing_db", "trials", "seed". */
PT_API pt_status pt_config_set_number(pt_config *cfg, const char *key, double value);
/* Canonical JSON; release with pt_string_free. */
PT_API pt_status pt_config_to_json(const pt_config *cfg, char **out);
PT_API void pt_string_free(char *s);

/* Commands. */
PT_API size_t pt_command_count(void);
PT_API const char *pt_command_name(size_t index);
PT_API pt_status pt_run_command(const pt_config *cfg, const char *command, int jobs,
                                pt_table **out);

/* Result tables. */
PT_API void pt_table_free(pt_table *t);
PT_API size_t pt_table_rows(const pt_table *t);
PT_API size_t pt_table_columns(const pt_table *t);
PT_API const char *pt_table_column_name(const pt_table *t, size_t col);
PT_API const char *pt_table_column_unit(const pt_table *t, size_t col);
PT_API pt_status pt_table_value(const pt_table *t, size_t row, size_t col, double *out);
/* format is "csv" or "json". */
PT_API pt_status pt_table_serialize(const pt_table *t, const char *format, char **out);
PT_API pt_status pt_table_write(const pt_table *t, const char *format, const char *path);

/* Closed-form theory. alpha_sq is the detected flux |alpha|^2 in 1/s. */
PT_API pt_status pt_gain_explicit(double alpha_sq, double kappa, double lambda, double r_m,
                                  double r_p, double *gamma);
PT_API pt_status pt_sigma_f_explicit(double alpha_sq, double kappa, double lambda, double r_m,
                                     double r_p, double *sigma_f_sq);
PT_API pt_status pt_sigma_s(double alpha_sq, double kappa, double lambda, double r_bar,
                            double *sigma_s_sq);
PT_API pt_status pt_optimal_squeezing(double alpha_sq, double kappa, double lambda, double l_sq,
                                      double *pure_db, double *sigma_s_sq);

#ifdef __cplusplus
}
#endif

#endif /* PHASETRACK_H */
