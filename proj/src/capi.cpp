// SPDX-License-Identifier: Apache-2.0
#include "qpskrx.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "qpskrx/bounds.hpp"
#include "qpskrx/config.hpp"
#include "qpskrx/enumerate.hpp"
#include "qpskrx/error.hpp"
#include "qpskrx/monte_carlo.hpp"
#include "qpskrx/runner.hpp"
#include "qpskrx/table.hpp"

struct qpskrx_config {
  qpskrx::RunConfig value;
};

struct qpskrx_table {
  qpskrx::Table value;
};

namespace {

thread_local std::string last_error;

qpskrx_status fail(qpskrx_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps the active exception onto a status code.
qpskrx_status translate() {
  try {
    throw;
  } catch (const qpskrx::ConfigError& e) {
    return fail(QPSKRX_ERR_CONFIG, e.what());
  } catch (const qpskrx::DomainError& e) {
    return fail(QPSKRX_ERR_DOMAIN, e.what());
  } catch (const qpskrx::NumericError& e) {
    return fail(QPSKRX_ERR_NUMERIC, e.what());
  } catch (const qpskrx::ResourceError& e) {
    return fail(QPSKRX_ERR_RESOURCE, e.what());
  } catch (const qpskrx::IoError& e) {
    return fail(QPSKRX_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QPSKRX_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(QPSKRX_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QPSKRX_ERR_INTERNAL, "unknown error");
  }
}

template <class F>
qpskrx_status guarded(F&& body) noexcept {
  last_error.clear();
  try {
    body();
    return QPSKRX_OK;
  } catch (...) {
    return translate();
  }
}

bool to_stdout(const char* path) { return path == nullptr || path[0] == '\0' || std::strcmp(path, "-") == 0; }

template <class Writer>
void write_to(const char* path, Writer&& writer) {
  if (to_stdout(path)) {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qpskrx::IoError(std::string("cannot open '") + path + "' for writing");
  writer(out);
  if (!out) throw qpskrx::IoError(std::string("write failed for '") + path + "'");
}

qpskrx::ReceiverParams to_params(const qpskrx_receiver_params& p) {
  qpskrx::ReceiverParams r;
  r.alpha_sq = p.alpha_sq;
  r.stages = p.stages;
  r.eta_total = p.eta_total;
  r.xi = p.xi;
  r.nu_per_state = p.nu_per_state;
  r.discard_us = p.discard_us;
  r.t_total_us = p.t_total_us;
  return r;
}

}  // namespace

extern "C" {

const char* qpskrx_version(void) { return "0.1.0"; }

const char* qpskrx_last_error(void) { return last_error.c_str(); }

const char* qpskrx_status_name(qpskrx_status status) {
  switch (status) {
    case QPSKRX_OK: return "ok";
    case QPSKRX_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QPSKRX_ERR_CONFIG: return "configuration error";
    case QPSKRX_ERR_DOMAIN: return "domain error";
    case QPSKRX_ERR_NUMERIC: return "numeric error";
    case QPSKRX_ERR_RESOURCE: return "resource error";
    case QPSKRX_ERR_IO: return "i/o error";
    case QPSKRX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qpskrx_status qpskrx_config_create(const char* mode, qpskrx_config** out) {
  if (mode == nullptr || out == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new qpskrx_config{qpskrx::default_config(qpskrx::parse_mode(mode))}; });
}

void qpskrx_config_destroy(qpskrx_config* config) { delete config; }

qpskrx_status qpskrx_config_merge_file(qpskrx_config* config, const char* path) {
  if (config == nullptr || path == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { qpskrx::merge_config_file(config->value, path); });
}

qpskrx_status qpskrx_config_set(qpskrx_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { qpskrx::apply_text_setting(config->value, key, value); });
}

qpskrx_status qpskrx_config_validate(const qpskrx_config* config) {
  if (config == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { qpskrx::validate(config->value); });
}

qpskrx_status qpskrx_config_to_json(const qpskrx_config* config, char* buffer, size_t capacity, size_t* needed) {
  if (config == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string text = qpskrx::to_json(config->value).dump();
    if (needed != nullptr) *needed = text.size() + 1;
    if (buffer != nullptr && capacity > 0) {
      const size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

const char* qpskrx_config_output_path(const qpskrx_config* config) {
  return config == nullptr ? "" : config->value.out.c_str();
}

int qpskrx_config_json_mirror(const qpskrx_config* config) { return config != nullptr && config->value.json ? 1 : 0; }

qpskrx_status qpskrx_run(const qpskrx_config* config, qpskrx_table** out) {
  if (config == nullptr || out == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new qpskrx_table{qpskrx::run(config->value)}; });
}

void qpskrx_table_destroy(qpskrx_table* table) { delete table; }

size_t qpskrx_table_rows(const qpskrx_table* table) { return table == nullptr ? 0 : table->value.rows.size(); }

size_t qpskrx_table_columns(const qpskrx_table* table) { return table == nullptr ? 0 : table->value.columns.size(); }

const char* qpskrx_table_column_name(const qpskrx_table* table, size_t column) {
  if (table == nullptr || column >= table->value.columns.size()) return nullptr;
  return table->value.columns[column].c_str();
}

qpskrx_status qpskrx_table_value(const qpskrx_table* table, size_t row, size_t column, double* out) {
  if (table == nullptr || out == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  if (row >= table->value.rows.size() || column >= table->value.columns.size()) {
    return fail(QPSKRX_ERR_INVALID_ARGUMENT, "table index out of range");
  }
  *out = table->value.rows[row][column];
  return QPSKRX_OK;
}

qpskrx_status qpskrx_table_write_csv(const qpskrx_table* table, const char* path) {
  if (table == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { write_to(path, [&](std::ostream& os) { qpskrx::write_csv(table->value, os); }); });
}

qpskrx_status qpskrx_table_write_json(const qpskrx_table* table, const char* path) {
  if (table == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { write_to(path, [&](std::ostream& os) { qpskrx::write_json(table->value, os); }); });
}

qpskrx_status qpskrx_sql_heterodyne(double alpha_sq, double* out) {
  if (out == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = qpskrx::sql_heterodyne(alpha_sq); });
}

qpskrx_status qpskrx_sql_lossy(double alpha_sq, double eta_total, double* out) {
  if (out == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = qpskrx::sql_lossy(alpha_sq, eta_total); });
}

qpskrx_status qpskrx_helstrom_qpsk(double alpha_sq, double* out) {
  if (out == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = qpskrx::helstrom_qpsk(alpha_sq); });
}

qpskrx_status qpskrx_enumerate_error(const qpskrx_receiver_params* params, int max_stages, double* error_prob) {
  if (params == nullptr || error_prob == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const qpskrx::InferenceModel model(to_params(*params));
    *error_prob = qpskrx::enumerate_error_probability(model, qpskrx::EnumerationOptions{max_stages, 0}).error_prob;
  });
}

qpskrx_status qpskrx_estimate_error(const qpskrx_receiver_params* params, uint64_t trials, uint64_t seed,
                                    unsigned threads, qpskrx_mc_result* out) {
  if (params == nullptr || out == nullptr) return fail(QPSKRX_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const qpskrx::InferenceModel model(to_params(*params));
    const auto r = qpskrx::estimate_error(model, trials, qpskrx::RngSpec{seed}, qpskrx::McOptions{threads, false});
    out->error_prob = r.error_prob;
    out->std_error = r.std_error;
    out->trials = r.trials;
    for (int s = 0; s < 4; ++s) out->per_symbol_error[s] = r.per_symbol_error[static_cast<std::size_t>(s)];
  });
}

}  // extern "C"
