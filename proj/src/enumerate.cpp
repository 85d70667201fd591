// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/enumerate.hpp"

#include <string>

#include "qpskrx/bayes.hpp"
#include "qpskrx/error.hpp"

namespace qpskrx {

namespace {

using Weights = std::array<double, kNumSymbols>;

struct Walker {
  const InferenceModel& inference;
  const TruthModel& truth;
  int stages;
  Weights correct{};
  Weights mass{};
  std::uint64_t leaves = 0;

  // Depth-first; the summation order is fixed by the (off, on) branch order.
  void walk(const FeedbackState& state, int prev_target, const Weights& weights) {
    const int k = state.bins();
    if (k == stages) {
      const int d = decide(state);
      correct[static_cast<std::size_t>(d)] += weights[static_cast<std::size_t>(d)];
      for (std::size_t m = 0; m < weights.size(); ++m) mass[m] += weights[m];
      ++leaves;
      return;
    }
    const int target = state.target();
    Weights off{};
    for (int m = 0; m < kNumSymbols; ++m) {
      off[static_cast<std::size_t>(m)] = truth.off_probability(k, m, prev_target, target);
    }
    for (Outcome e : {Outcome{0}, Outcome{1}}) {
      Weights next{};
      bool alive = false;
      for (std::size_t m = 0; m < next.size(); ++m) {
        next[m] = weights[m] * (e == 0 ? off[m] : 1.0 - off[m]);
        alive = alive || next[m] > 0.0;
      }
      if (!alive) continue;
      walk(state.updated(e, inference), target, next);
    }
  }
};

}  // namespace

EnumerationResult enumerate_error_probability(const InferenceModel& inference, const TruthModel& truth,
                                              const EnumerationOptions& options) {
  const int stages = inference.stages();
  if (truth.params().stages != stages) throw DomainError("truth and inference models disagree on M");
  if (stages > options.max_stages) {
    throw ResourceError("enumeration walks 2^M histories; M = " + std::to_string(stages) +
                        " exceeds the bound " + std::to_string(options.max_stages));
  }
  Walker walker{inference, truth, stages};
  const FeedbackState start(options.origin);
  walker.walk(start, start.target(), Weights{1.0, 1.0, 1.0, 1.0});

  EnumerationResult result;
  double correct_total = 0.0;
  for (std::size_t m = 0; m < walker.correct.size(); ++m) {
    result.per_symbol_error[m] = 1.0 - walker.correct[m];
    correct_total += walker.correct[m];
  }
  result.error_prob = 1.0 - correct_total / 4.0;
  result.branch_mass = walker.mass;
  result.histories = walker.leaves;
  return result;
}

EnumerationResult enumerate_error_probability(const InferenceModel& inference,
                                              const EnumerationOptions& options) {
  return enumerate_error_probability(inference, TruthModel(inference.params()), options);
}

}  // namespace qpskrx
