// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/runner.hpp"

#include <exception>
#include <functional>
#include <optional>
#include <sstream>

#include "qpskrx/bounds.hpp"
#include "qpskrx/enumerate.hpp"
#include "qpskrx/error.hpp"
#include "qpskrx/monte_carlo.hpp"

namespace qpskrx {

namespace {

// Re-raises the active exception with `where` prepended, keeping its category.
[[noreturn]] void rethrow_with_context(const std::string& where) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), where + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(where + ": " + e.what());
  } catch (const NumericError& e) {
    throw NumericError(where + ": " + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError(where + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(where + ": " + e.what());
  }
}

std::string point_label(double alpha_sq, int stages) {
  std::ostringstream os;
  os << "grid point alpha_sq=" << format_number(alpha_sq) << " M=" << stages;
  return os.str();
}

SimulationResult simulate(const RunConfig& c, const ReceiverParams& params, bool with_delay) {
  std::optional<ActuatorTiming> timing;
  if (with_delay) timing = ActuatorTiming{c.t_hold_us, c.t_swing_us};
  const TruthModel truth(params, timing);
  const InferenceModel inference(params);
  return estimate_error(truth, inference, c.trials, RngSpec{c.seed}, McOptions{c.threads, false});
}

}  // namespace

ReceiverParams receiver_params(const RunConfig& c, double alpha_sq, int stages, double eta_total, bool discard) {
  ReceiverParams p;
  p.alpha_sq = alpha_sq;
  p.stages = stages;
  p.eta_total = eta_total;
  p.xi = c.xi;
  p.nu_per_state = c.nu_per_state;
  p.discard_us = discard ? c.dt_us : 0.0;
  p.t_total_us = c.t_total_us;
  return p;
}

Table run(const RunConfig& c) {
  validate(c);
  Table table;
  table.header = nlohmann::json{{"config", to_json(c)}, {"digest", config_digest(c)}, {"seed", c.seed}};
  const double eta = c.effective_eta_total();
  const auto alphas = c.alpha_sq.values();

  auto guarded = [](const std::string& where, const std::function<void()>& body) {
    try {
      body();
    } catch (...) {
      rethrow_with_context(where);
    }
  };

  switch (c.mode) {
    case Mode::Bounds:
      table.columns = {"alpha_sq", "alpha_sq_att", "sql", "sql_lossy", "helstrom"};
      for (double a : alphas) {
        guarded(point_label(a, c.m), [&] {
          const BoundPoint b = bound_point(a, eta);
          table.rows.push_back({a, eta * a, b.sql, b.sql_lossy, b.helstrom});
        });
      }
      break;

    case Mode::Enumerate:
      table.columns = {"alpha_sq", "alpha_sq_att", "m", "error_prob", "sql", "sql_lossy", "helstrom"};
      for (double a : alphas) {
        guarded(point_label(a, c.m), [&] {
          const ReceiverParams p = receiver_params(c, a, c.m, eta, c.discard_loss);
          std::optional<ActuatorTiming> timing;
          if (c.truth_delay) timing = ActuatorTiming{c.t_hold_us, c.t_swing_us};
          const auto r = enumerate_error_probability(InferenceModel(p), TruthModel(p, timing),
                                                     EnumerationOptions{c.enum_max_m, 0});
          const BoundPoint b = bound_point(a, eta);
          table.rows.push_back({a, eta * a, double(c.m), r.error_prob, b.sql, b.sql_lossy, b.helstrom});
        });
      }
      break;

    case Mode::Sweep:
      table.columns = {"alpha_sq", "alpha_sq_att", "m",      "trials", "error_prob", "stderr", "err_m0",
                       "err_m1",   "err_m2",       "err_m3", "sql",    "sql_lossy",  "helstrom"};
      for (double a : alphas) {
        guarded(point_label(a, c.m), [&] {
          const auto r = simulate(c, receiver_params(c, a, c.m, eta, c.discard_loss), c.truth_delay);
          const BoundPoint b = bound_point(a, eta);
          table.rows.push_back({a, eta * a, double(c.m), double(r.trials), r.error_prob, r.std_error,
                                r.per_symbol_error[0], r.per_symbol_error[1], r.per_symbol_error[2],
                                r.per_symbol_error[3], b.sql, b.sql_lossy, b.helstrom});
        });
      }
      break;

    case Mode::EfficiencySweep:
      table.columns = {"eta_spd", "eta_total", "alpha_sq", "alpha_sq_att", "m",
                       "trials",  "error_prob", "stderr",  "sql",          "sql_lossy"};
      for (double spd : c.eta_spd_list) {
        const double eta_i = c.eta_t * spd;
        for (double a : alphas) {
          guarded(point_label(a, c.m) + " eta_spd=" + format_number(spd), [&] {
            const auto r = simulate(c, receiver_params(c, a, c.m, eta_i, c.discard_loss), c.truth_delay);
            table.rows.push_back({spd, eta_i, a, eta_i * a, double(c.m), double(r.trials), r.error_prob,
                                  r.std_error, sql_heterodyne(a), sql_lossy(a, eta_i)});
          });
        }
      }
      break;

    case Mode::DelaySweep:
      table.columns = {"dt_us", "truth_delay", "alpha_sq", "alpha_sq_att", "m",
                       "trials", "error_prob", "stderr", "sql"};
      for (double a : alphas) {
        for (double dt : c.dt_us_grid.values()) {
          for (bool with_delay : {false, true}) {
            guarded(point_label(a, c.m) + " dt_us=" + format_number(dt), [&] {
              RunConfig point = c;
              point.dt_us = dt;
              const auto r = simulate(point, receiver_params(point, a, c.m, eta, true), with_delay);
              table.rows.push_back({dt, with_delay ? 1.0 : 0.0, a, eta * a, double(c.m), double(r.trials),
                                    r.error_prob, r.std_error, sql_heterodyne(a)});
            });
          }
        }
      }
      break;

    case Mode::StagesSweep:
      table.columns = {"m", "discard_loss", "alpha_sq", "alpha_sq_att", "trials", "error_prob", "stderr", "sql"};
      for (double a : alphas) {
        for (int stages = c.m_min; stages <= c.m_max; ++stages) {
          for (bool discard : {false, true}) {
            guarded(point_label(a, stages), [&] {
              const auto r = simulate(c, receiver_params(c, a, stages, eta, discard), c.truth_delay && discard);
              table.rows.push_back({double(stages), discard ? 1.0 : 0.0, a, eta * a, double(r.trials),
                                    r.error_prob, r.std_error, sql_heterodyne(a)});
            });
          }
        }
      }
      break;
  }
  return table;
}

}  // namespace qpskrx
