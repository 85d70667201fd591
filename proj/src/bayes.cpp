// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpskrx/error.hpp"

namespace qpskrx {

OutcomeHistory::OutcomeHistory(int stages) : stages_(stages) {
  if (stages < 1) throw DomainError("stage count M must be >= 1");
  bits_.reserve(static_cast<std::size_t>(stages));
}

void OutcomeHistory::push(Outcome e) {
  if (e > 1) throw DomainError("outcome must be 0 or 1");
  if (bits_.size() >= static_cast<std::size_t>(stages_)) {
    throw DomainError("history already holds M = " + std::to_string(stages_) + " outcomes");
  }
  bits_.push_back(e);
}

int argmax_tiebreak(const std::array<double, kNumSymbols>& values, int origin) noexcept {
  int best = quarter_turns(origin);
  for (int i = 1; i < kNumSymbols; ++i) {
    const int idx = quarter_turns(origin + i);
    if (values[static_cast<std::size_t>(idx)] > values[static_cast<std::size_t>(best)]) best = idx;
  }
  return best;
}

FeedbackState::FeedbackState(int origin) : target_(quarter_turns(origin)), origin_(quarter_turns(origin)) {}

Posterior FeedbackState::posterior() const {
  Posterior p{};
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(log_weights_[i]);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

FeedbackState FeedbackState::updated(Outcome e, const InferenceModel& model) const {
  if (e > 1) throw DomainError("outcome must be 0 or 1");
  if (bins_ >= model.stages()) {
    throw DomainError("posterior already absorbed all M = " + std::to_string(model.stages()) + " bins");
  }
  FeedbackState next = *this;
  for (int m = 0; m < kNumSymbols; ++m) {
    ++next.counts_[static_cast<std::size_t>(m)][static_cast<std::size_t>(model.factor_id(bins_, m - target_, e))];
  }
  std::array<double, kNumSymbols> raw{};
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < raw.size(); ++m) {
    double sum = 0.0;
    for (int id = 0; id < model.factor_count(); ++id) {
      const int n = next.counts_[m][static_cast<std::size_t>(id)];
      if (n != 0) sum += n * model.factor_log(id);
    }
    raw[m] = sum;
    top = std::max(top, sum);
  }
  if (!std::isfinite(top)) {
    throw NumericError("all hypotheses have zero likelihood at bin " + std::to_string(bins_));
  }
  for (std::size_t m = 0; m < raw.size(); ++m) next.log_weights_[m] = raw[m] - top;
  next.bins_ = bins_ + 1;
  next.target_ = argmax_tiebreak(next.log_weights_, origin_);
  return next;
}

FeedbackState initial_state(int origin) { return FeedbackState(origin); }

double bin_likelihood(const InferenceModel& model, int k, int m, int target, Outcome e) {
  return model.bin_likelihood(k, m, target, e);
}

FeedbackState posterior_update(const FeedbackState& state, Outcome e, const InferenceModel& model) {
  return state.updated(e, model);
}

int decide(const FeedbackState& state) noexcept {
  return argmax_tiebreak(state.log_weights(), state.origin());
}

int decide(const Posterior& posterior) noexcept { return argmax_tiebreak(posterior, 0); }

FeedbackState replay(const OutcomeHistory& history, const InferenceModel& model, int origin) {
  FeedbackState state(origin);
  for (Outcome e : history.bits()) state = state.updated(e, model);
  return state;
}

}  // namespace qpskrx
