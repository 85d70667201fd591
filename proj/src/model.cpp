// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpskrx/error.hpp"

namespace qpskrx {

void ReceiverParams::validate() const {
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) throw DomainError("alpha_sq must be finite and >= 0");
  if (stages < 1) throw DomainError("stage count M must be >= 1");
  ChannelModel{eta_total, xi}.validate();
  DetectorModel{1.0, nu_per_state}.validate();
  if (!(t_total_us > 0.0) || !std::isfinite(t_total_us)) throw DomainError("T must be > 0");
  if (!(discard_us >= 0.0) || discard_us > bin_duration_us()) {
    throw DomainError("discard window must lie in [0, T/M] (T/M = " + std::to_string(bin_duration_us()) + " us)");
  }
}

double ReceiverParams::bin_efficiency(int k) const noexcept {
  if (k == 0) return eta_total;
  return eta_total * (1.0 - discard_us / bin_duration_us());
}

double ReceiverParams::total_discard_loss() const noexcept {
  return (stages - 1) * discard_us / t_total_us;
}

InferenceModel::InferenceModel(const ReceiverParams& params) : params_(params) {
  params_.validate();
  for (int cls = 0; cls < 2; ++cls) {
    const ChannelModel ch = params_.channel(cls);
    for (int rel = 0; rel < 4; ++rel) {
      const double mean = params_.nu_per_bin() +
                          2.0 * ch.eta_total * (1.0 - ch.xi * quarter_turn_cos(rel)) * params_.gamma_sq();
      const double off = std::exp(-mean);
      auto& off_row = off_table_[static_cast<std::size_t>(cls)][static_cast<std::size_t>(rel)];
      auto& log_row = log_table_[static_cast<std::size_t>(cls)][static_cast<std::size_t>(rel)];
      off_row = {off, -std::expm1(-mean)};
      log_row = {-mean, std::log(-std::expm1(-mean))};
    }
  }
  for (std::size_t cls = 0; cls < 2; ++cls)
    for (std::size_t rel = 0; rel < 4; ++rel)
      for (std::size_t e = 0; e < 2; ++e) {
        const double v = log_table_[cls][rel][e];
        const auto begin = factor_log_.begin();
        const auto it = std::find(begin, begin + factor_count_, v);
        if (it == begin + factor_count_) factor_log_[static_cast<std::size_t>(factor_count_++)] = v;
        factor_id_[cls][rel][e] = static_cast<int>(std::find(begin, begin + factor_count_, v) - begin);
      }
}

double InferenceModel::bin_likelihood(int k, int m, int target, Outcome e) const {
  if (m < 0 || m >= kNumSymbols || target < 0 || target >= kNumSymbols) {
    throw DomainError("symbol index out of range");
  }
  if (k < 0 || k >= params_.stages) throw DomainError("bin index out of range: " + std::to_string(k));
  if (e > 1) throw DomainError("outcome must be 0 or 1");
  return off_table_[bin_class(k)][static_cast<std::size_t>(quarter_turns(m - target))][e];
}

TruthModel::TruthModel(const ReceiverParams& params, std::optional<ActuatorTiming> timing)
    : params_(params), timing_(timing) {
  params_.validate();
  const double g = params_.gamma_sq();
  const double nu = params_.nu_per_bin();
  for (int rel = 0; rel < 4; ++rel) {
    first_bin_[static_cast<std::size_t>(rel)] = off_probability_quarter_turn(rel, g, params_.channel(0), nu);
  }
  if (!timing_) {
    for (int rel_prev = 0; rel_prev < 4; ++rel_prev) {
      for (int move = 0; move < 4; ++move) {
        later_bins_[static_cast<std::size_t>(rel_prev)][static_cast<std::size_t>(move)] =
            off_probability_quarter_turn(rel_prev - move, g, params_.channel(1), nu);
      }
    }
    return;
  }
  const DelayParams dp = delay_params();
  const ChannelModel ch{params_.eta_total, params_.xi};
  for (int rel_prev = 0; rel_prev < 4; ++rel_prev) {
    for (int move = 0; move < 4; ++move) {
      later_bins_[static_cast<std::size_t>(rel_prev)][static_cast<std::size_t>(move)] =
          off_prob_bin_with_delay(rel_prev, 0, move, g, dp, ch, nu);
    }
  }
}

DelayParams TruthModel::delay_params() const {
  if (!timing_) throw DomainError("truth model has no delay timing");
  DelayParams dp{params_.bin_duration_us(), timing_->t_hold_us, timing_->t_swing_us, params_.discard_us};
  dp.validate();
  return dp;
}

}  // namespace qpskrx
