// SPDX-License-Identifier: Apache-2.0
//
// Figure-reproduction driver: expands a RunConfig into grid points and
// evaluates each one. Columns per mode:
//
//   bounds            alpha_sq alpha_sq_att sql sql_lossy helstrom
//   enumerate         alpha_sq alpha_sq_att m error_prob sql sql_lossy helstrom
//   sweep             alpha_sq alpha_sq_att m trials error_prob stderr
//                     err_m0 err_m1 err_m2 err_m3 sql sql_lossy helstrom
//   efficiency-sweep  eta_spd eta_total alpha_sq alpha_sq_att m trials
//                     error_prob stderr sql sql_lossy
//   delay-sweep       dt_us truth_delay alpha_sq alpha_sq_att m trials
//                     error_prob stderr sql
//   stages-sweep      m discard_loss alpha_sq alpha_sq_att trials
//                     error_prob stderr sql
//
// alpha_sq_att is the attenuated mean photon number eta_total * alpha_sq.
#pragma once

#include "qpskrx/config.hpp"
#include "qpskrx/model.hpp"
#include "qpskrx/table.hpp"

namespace qpskrx {

/// Receiver parameters for one grid point.
ReceiverParams receiver_params(const RunConfig& config, double alpha_sq, int stages, double eta_total,
                               bool discard);

/// Validates, then evaluates every grid point in order. Inner failures are
/// rethrown with the grid point attached.
Table run(const RunConfig& config);

}  // namespace qpskrx
