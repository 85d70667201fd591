// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo estimate of the receiver error probability.
//
// Every trial owns a random stream derived from (seed, true symbol, trial
// index) alone, so outcomes do not depend on how trials are spread over
// worker threads. Trials are stratified: N/4 per true symbol, the remainder
// going to symbols 0, 1, ... in order.
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qpskrx/model.hpp"

namespace qpskrx {

/// SplitMix64 generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  constexpr result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct RngSpec {
  std::uint64_t seed = 20190101;

  /// Independent stream for one trial.
  SplitMix64 stream(int symbol, std::uint64_t trial) const noexcept;
};

struct McOptions {
  unsigned threads = 0;          // 0: hardware concurrency
  bool record_outcomes = false;  // keep per-trial correctness flags
};

struct SimulationResult {
  double error_prob = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / trials)
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  std::array<double, 4> per_symbol_error{};
  std::array<std::uint64_t, 4> per_symbol_trials{};
  std::array<std::uint64_t, 4> per_symbol_errors{};
  std::string config_digest;
  /// Per true symbol, 1 = decided correctly; filled only with McOptions::record_outcomes.
  std::array<std::vector<std::uint8_t>, 4> outcomes;
};

/// One state: M bins with MAP feedback; returns whether the decision equals truth_symbol.
bool simulate_trial(int truth_symbol, const TruthModel& truth, const InferenceModel& inference,
                    SplitMix64& rng, int origin = 0);

SimulationResult estimate_error(const TruthModel& truth, const InferenceModel& inference,
                                std::uint64_t trials, const RngSpec& rng, const McOptions& options = {});

/// Matched delay-free truth model.
SimulationResult estimate_error(const InferenceModel& inference, std::uint64_t trials, const RngSpec& rng,
                                const McOptions& options = {});

/// Trials assigned to each true symbol for a total of N.
std::array<std::uint64_t, 4> stratify_trials(std::uint64_t trials) noexcept;

}  // namespace qpskrx
