/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the QPSK adaptive-receiver simulator.
 *
 * Every fallible call returns a qpskrx_status; on failure a description is
 * available from qpskrx_last_error() on the calling thread until the next
 * call on that thread. Handles are opaque and owned by the caller, who
 * releases them with the matching *_destroy function (NULL is accepted).
 */
#ifndef QPSKRX_H
#define QPSKRX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QPSKRX_BUILDING_LIBRARY)
#    define QPSKRX_API __declspec(dllexport)
#  else
#    define QPSKRX_API __declspec(dllimport)
#  endif
#else
#  define QPSKRX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qpskrx_status {
  QPSKRX_OK = 0,
  QPSKRX_ERR_INVALID_ARGUMENT = 1, /* NULL handle/pointer, bad index */
  QPSKRX_ERR_CONFIG = 2,           /* unknown key, out-of-range value */
  QPSKRX_ERR_DOMAIN = 3,           /* value outside an operation's domain */
  QPSKRX_ERR_NUMERIC = 4,          /* floating-point breakdown */
  QPSKRX_ERR_RESOURCE = 5,         /* explicit resource bound exceeded */
  QPSKRX_ERR_IO = 6,               /* file could not be read or written */
  QPSKRX_ERR_INTERNAL = 99
} qpskrx_status;

typedef struct qpskrx_config qpskrx_config;
typedef struct qpskrx_table qpskrx_table;

QPSKRX_API const char* qpskrx_version(void);
QPSKRX_API const char* qpskrx_last_error(void);
QPSKRX_API const char* qpskrx_status_name(qpskrx_status status);

/* Configuration. mode: bounds | sweep | delay-sweep | efficiency-sweep |
 * stages-sweep | enumerate. Defaults for the mode are applied. */
QPSKRX_API qpskrx_status qpskrx_config_create(const char* mode, qpskrx_config** out);
QPSKRX_API void qpskrx_config_destroy(qpskrx_config* config);
/* Merges a flat JSON config file, or the config echoed in a result CSV. */
QPSKRX_API qpskrx_status qpskrx_config_merge_file(qpskrx_config* config, const char* path);
/* Sets one key from its text form (e.g. "m", "10"; "alpha_sq_grid", "0.5:10:20:log"). */
QPSKRX_API qpskrx_status qpskrx_config_set(qpskrx_config* config, const char* key, const char* value);
QPSKRX_API qpskrx_status qpskrx_config_validate(const qpskrx_config* config);
/* Canonical JSON of the configuration. Writes at most `capacity` bytes
 * including the terminator; *needed receives the full size with terminator. */
QPSKRX_API qpskrx_status qpskrx_config_to_json(const qpskrx_config* config, char* buffer, size_t capacity,
                                               size_t* needed);
/* Output path ("" = stdout) and JSON-mirror flag as configured. */
QPSKRX_API const char* qpskrx_config_output_path(const qpskrx_config* config);
QPSKRX_API int qpskrx_config_json_mirror(const qpskrx_config* config);

/* Runs the configured mode; the table holds one row per grid point. */
QPSKRX_API qpskrx_status qpskrx_run(const qpskrx_config* config, qpskrx_table** out);
QPSKRX_API void qpskrx_table_destroy(qpskrx_table* table);
QPSKRX_API size_t qpskrx_table_rows(const qpskrx_table* table);
QPSKRX_API size_t qpskrx_table_columns(const qpskrx_table* table);
QPSKRX_API const char* qpskrx_table_column_name(const qpskrx_table* table, size_t column);
QPSKRX_API qpskrx_status qpskrx_table_value(const qpskrx_table* table, size_t row, size_t column, double* out);
/* path NULL or "" or "-" writes to stdout. */
QPSKRX_API qpskrx_status qpskrx_table_write_csv(const qpskrx_table* table, const char* path);
QPSKRX_API qpskrx_status qpskrx_table_write_json(const qpskrx_table* table, const char* path);

/* Scalar entry points. */
QPSKRX_API qpskrx_status qpskrx_sql_heterodyne(double alpha_sq, double* out);
QPSKRX_API qpskrx_status qpskrx_sql_lossy(double alpha_sq, double eta_total, double* out);
QPSKRX_API qpskrx_status qpskrx_helstrom_qpsk(double alpha_sq, double* out);

typedef struct qpskrx_receiver_params {
  double alpha_sq;
  int stages;
  double eta_total;
  double xi;
  double nu_per_state;
  double discard_us;
  double t_total_us;
} qpskrx_receiver_params;

/* Exact error probability of the matched delay-free receiver (2^M histories). */
QPSKRX_API qpskrx_status qpskrx_enumerate_error(const qpskrx_receiver_params* params, int max_stages,
                                                double* error_prob);

typedef struct qpskrx_mc_result {
  double error_prob;
  double std_error;
  uint64_t trials;
  double per_symbol_error[4];
} qpskrx_mc_result;

/* Monte Carlo estimate for the matched delay-free receiver; threads = 0 uses all cores. */
QPSKRX_API qpskrx_status qpskrx_estimate_error(const qpskrx_receiver_params* params, uint64_t trials,
                                               uint64_t seed, unsigned threads, qpskrx_mc_result* out);

#ifdef __cplusplus
}
#endif

#endif /* QPSKRX_H */
