// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

#include "qpskrx/model.hpp"

namespace qpskrx {

struct EnumerationOptions {
  int max_stages = 20;  // 2^M histories are walked
  int origin = 0;       // initial target and tie-break origin
};

struct EnumerationResult {
  double error_prob = 0.0;
  std::array<double, 4> per_symbol_error{};
  /// Sum of history probabilities per true symbol; 1 up to rounding.
  std::array<double, 4> branch_mass{};
  std::uint64_t histories = 0;  // leaves visited (zero-probability branches are pruned)
};

/// Exact average error probability: walks every outcome history, running the
/// posterior recursion with `inference` and weighting each leaf by its
/// probability under `truth`.
EnumerationResult enumerate_error_probability(const InferenceModel& inference, const TruthModel& truth,
                                              const EnumerationOptions& options = {});

/// Matched case: truth model = delay-free model with the inference parameters.
EnumerationResult enumerate_error_probability(const InferenceModel& inference,
                                              const EnumerationOptions& options = {});

}  // namespace qpskrx
