// SPDX-License-Identifier: Apache-2.0
//
// Receiver models: the inference model used in the posterior update and the
// truth model that generates detector outcomes. Both share the same physical
// parameters; the truth model may additionally carry feedback-delay physics.
//
// Discard loss is applied per bin boundary: the first bin runs at full
// efficiency, each later bin loses delta_t / t_bin of its intensity, for a
// total of (M - 1) delta_t / T over the state.
#pragma once

#include <array>
#include <optional>

#include "qpskrx/delay.hpp"
#include "qpskrx/physics.hpp"

namespace qpskrx {

struct ReceiverParams {
  double alpha_sq = 0.0;      // at-source signal mean photon number
  int stages = 10;            // M
  double eta_total = 1.0;
  double xi = 1.0;
  double nu_per_state = 0.0;
  double discard_us = 0.0;    // delta_t per bin boundary
  double t_total_us = 200.0;  // T

  void validate() const;
  double bin_duration_us() const noexcept { return t_total_us / stages; }
  double gamma_sq() const noexcept { return alpha_sq / stages; }
  double nu_per_bin() const noexcept { return nu_per_state / stages; }
  /// Effective eta_total in bin k (0-based).
  double bin_efficiency(int k) const noexcept;
  /// Fraction of the signal intensity lost to discarding over the whole state.
  double total_discard_loss() const noexcept;
  ChannelModel channel(int k) const noexcept { return {bin_efficiency(k), xi}; }
};

/// Hold/swing durations of the feedback actuator (bin length and discard come from ReceiverParams).
struct ActuatorTiming {
  double t_hold_us = 0.37;
  double t_swing_us = 0.63;
};

/// Delay-free likelihood model used by the posterior recursion.
class InferenceModel {
 public:
  explicit InferenceModel(const ReceiverParams& params);

  const ReceiverParams& params() const noexcept { return params_; }
  int stages() const noexcept { return params_.stages; }

  /// p(e | symbol m, bin k displaced so that `target` is nulled).
  double bin_likelihood(int k, int m, int target, Outcome e) const;
  /// log p(e | relative quarter turn rel = m - target) in bin k; may be -inf.
  double log_likelihood(int k, int rel, Outcome e) const noexcept {
    return log_table_[bin_class(k)][static_cast<std::size_t>(quarter_turns(rel))][e];
  }

  /// Distinct log-likelihood values, numbered in a fixed order; equal values
  /// share one id. Used to accumulate posteriors in a canonical order.
  static constexpr int kMaxFactors = 16;  // 2 bin classes x 4 turns x 2 outcomes
  int factor_id(int k, int rel, Outcome e) const noexcept {
    return factor_id_[bin_class(k)][static_cast<std::size_t>(quarter_turns(rel))][e];
  }
  int factor_count() const noexcept { return factor_count_; }
  double factor_log(int id) const noexcept { return factor_log_[static_cast<std::size_t>(id)]; }

 private:
  static std::size_t bin_class(int k) noexcept { return k == 0 ? 0 : 1; }

  ReceiverParams params_;
  std::array<std::array<std::array<double, 2>, 4>, 2> off_table_{};
  std::array<std::array<std::array<double, 2>, 4>, 2> log_table_{};
  std::array<std::array<std::array<int, 2>, 4>, 2> factor_id_{};
  std::array<double, kMaxFactors> factor_log_{};
  int factor_count_ = 0;
};

/// Outcome-generating model. Without timing it is the delay-free bin model;
/// with timing, bins after a target change go through hold/swing/settle.
class TruthModel {
 public:
  explicit TruthModel(const ReceiverParams& params, std::optional<ActuatorTiming> timing = {});

  const ReceiverParams& params() const noexcept { return params_; }
  bool has_delay() const noexcept { return timing_.has_value(); }
  const std::optional<ActuatorTiming>& timing() const noexcept { return timing_; }
  /// Delay parameters for bins k >= 1. Requires has_delay().
  DelayParams delay_params() const;

  /// Off probability of bin k for true symbol m, given the previous and current targets.
  /// prev_target is ignored for k = 0.
  double off_probability(int k, int m, int prev_target, int target) const noexcept {
    if (k == 0) return first_bin_[static_cast<std::size_t>(quarter_turns(m - target))];
    return later_bins_[static_cast<std::size_t>(quarter_turns(m - prev_target))]
                      [static_cast<std::size_t>(quarter_turns(target - prev_target))];
  }

 private:
  ReceiverParams params_;
  std::optional<ActuatorTiming> timing_;
  std::array<double, 4> first_bin_{};
  // [m - prev_target][target - prev_target]
  std::array<std::array<double, 4>, 4> later_bins_{};
};

}  // namespace qpskrx
