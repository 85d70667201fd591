// SPDX-License-Identifier: Apache-2.0
//
// Posterior recursion over the four QPSK hypotheses with MAP feedback.
//
// The state keeps log-weights shifted so that the largest is exactly 0; this
// is the per-step renormalization and keeps long histories from underflowing.
// Normalized probabilities are produced on demand by posterior().
//
// A hypothesis' log-weight only depends on how often each distinct
// likelihood value has occurred, so the state keeps those counts and sums the
// values in one fixed order.
// Hypotheses that are tied in exact arithmetic then get bit-identical weights
// no matter in which order their factors arrived, and the tie-break below
// sees the tie.
//
// Ties in the argmax go to the lowest index counted from `origin` (origin 0 is
// plain lowest-index). The first bin nulls `origin`.
#pragma once

#include <array>
#include <vector>

#include "qpskrx/model.hpp"
#include "qpskrx/physics.hpp"

namespace qpskrx {

using Posterior = std::array<double, kNumSymbols>;

/// Detector outcomes e_1..e_j, bounded by the stage count.
class OutcomeHistory {
 public:
  explicit OutcomeHistory(int stages);
  void push(Outcome e);
  const std::vector<Outcome>& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }

 private:
  int stages_;
  std::vector<Outcome> bits_;
};

/// Argmax, ties broken by the lowest (i - origin) mod 4.
int argmax_tiebreak(const std::array<double, kNumSymbols>& values, int origin = 0) noexcept;

class FeedbackState {
 public:
  /// Uniform prior, target = origin.
  explicit FeedbackState(int origin = 0);

  int target() const noexcept { return target_; }
  int origin() const noexcept { return origin_; }
  /// Number of bins already absorbed; also the index of the next bin.
  int bins() const noexcept { return bins_; }
  const std::array<double, kNumSymbols>& log_weights() const noexcept { return log_weights_; }
  Posterior posterior() const;

  /// Absorb the outcome of the next bin (which nulled target()).
  /// Throws NumericError when every hypothesis has zero likelihood.
  FeedbackState updated(Outcome e, const InferenceModel& model) const;

 private:
  // per hypothesis, occurrences of each InferenceModel::factor_id
  std::array<std::array<int, InferenceModel::kMaxFactors>, kNumSymbols> counts_{};
  std::array<double, kNumSymbols> log_weights_{};
  int target_;
  int origin_;
  int bins_ = 0;
};

FeedbackState initial_state(int origin = 0);

double bin_likelihood(const InferenceModel& model, int k, int m, int target, Outcome e);

FeedbackState posterior_update(const FeedbackState& state, Outcome e, const InferenceModel& model);

/// Final decision: MAP hypothesis with the state's tie-break rule.
int decide(const FeedbackState& state) noexcept;
int decide(const Posterior& posterior) noexcept;

/// Runs the recursion along a complete history.
FeedbackState replay(const OutcomeHistory& history, const InferenceModel& model, int origin = 0);

}  // namespace qpskrx
