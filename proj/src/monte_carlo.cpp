// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "qpskrx/bayes.hpp"
#include "qpskrx/error.hpp"

namespace qpskrx {

namespace {

std::uint64_t mix(std::uint64_t x) noexcept { return SplitMix64(x)(); }

std::string describe(const TruthModel& truth, const InferenceModel& inference, std::uint64_t seed) {
  auto echo = [](std::ostringstream& os, const ReceiverParams& p) {
    os << "alpha_sq=" << p.alpha_sq << ";M=" << p.stages << ";eta_total=" << p.eta_total << ";xi=" << p.xi
       << ";nu_per_state=" << p.nu_per_state << ";discard_us=" << p.discard_us << ";T_us=" << p.t_total_us;
  };
  std::ostringstream os;
  os.precision(17);
  os << "truth{";
  echo(os, truth.params());
  if (truth.timing()) os << ";t_hold_us=" << truth.timing()->t_hold_us << ";t_swing_us=" << truth.timing()->t_swing_us;
  os << "} inference{";
  echo(os, inference.params());
  os << "} seed=" << seed;
  return os.str();
}

struct Chunk {
  int symbol;
  std::uint64_t first;
  std::uint64_t count;
};

}  // namespace

SplitMix64 RngSpec::stream(int symbol, std::uint64_t trial) const noexcept {
  std::uint64_t key = mix(seed);
  key = mix(key ^ (static_cast<std::uint64_t>(symbol) + 0x632be59bd9b4e019ULL));
  key = mix(key ^ trial);
  return SplitMix64(key);
}

std::array<std::uint64_t, 4> stratify_trials(std::uint64_t trials) noexcept {
  std::array<std::uint64_t, 4> n{};
  for (std::size_t s = 0; s < n.size(); ++s) n[s] = trials / 4 + (s < trials % 4 ? 1 : 0);
  return n;
}

bool simulate_trial(int truth_symbol, const TruthModel& truth, const InferenceModel& inference,
                    SplitMix64& rng, int origin) {
  FeedbackState state(origin);
  int prev_target = state.target();
  for (int k = 0; k < inference.stages(); ++k) {
    const int target = state.target();
    const double p_off = truth.off_probability(k, truth_symbol, prev_target, target);
    state = state.updated(sample_click(p_off, rng.uniform()), inference);
    prev_target = target;
  }
  return decide(state) == truth_symbol;
}

SimulationResult estimate_error(const TruthModel& truth, const InferenceModel& inference,
                                std::uint64_t trials, const RngSpec& rng, const McOptions& options) {
  if (trials == 0) throw DomainError("Monte Carlo needs at least one trial");
  if (truth.params().stages != inference.stages()) throw DomainError("truth and inference models disagree on M");

  SimulationResult result;
  result.trials = trials;
  result.per_symbol_trials = stratify_trials(trials);
  result.config_digest = describe(truth, inference, rng.seed);
  if (options.record_outcomes) {
    for (std::size_t s = 0; s < 4; ++s) result.outcomes[s].assign(result.per_symbol_trials[s], 0);
  }

  unsigned workers = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  // Contiguous slices of the (symbol, trial) sequence, one per worker.
  std::vector<std::vector<Chunk>> plan(workers);
  {
    const std::uint64_t per_worker = (trials + workers - 1) / workers;
    std::size_t w = 0;
    std::uint64_t room = per_worker;
    for (int s = 0; s < 4; ++s) {
      std::uint64_t first = 0;
      std::uint64_t left = result.per_symbol_trials[static_cast<std::size_t>(s)];
      while (left > 0) {
        const std::uint64_t take = std::min(left, room);
        plan[w].push_back({s, first, take});
        first += take;
        left -= take;
        room -= take;
        if (room == 0 && w + 1 < workers) {
          ++w;
          room = per_worker;
        }
      }
    }
  }

  std::vector<std::array<std::uint64_t, 4>> errors(workers, std::array<std::uint64_t, 4>{});
  std::vector<std::exception_ptr> failures(workers);
  auto run = [&](std::size_t w) {
    try {
      for (const Chunk& c : plan[w]) {
        auto& tally = errors[w][static_cast<std::size_t>(c.symbol)];
        for (std::uint64_t i = c.first; i < c.first + c.count; ++i) {
          SplitMix64 stream = rng.stream(c.symbol, i);
          const bool ok = simulate_trial(c.symbol, truth, inference, stream);
          if (!ok) ++tally;
          if (options.record_outcomes) result.outcomes[static_cast<std::size_t>(c.symbol)][i] = ok ? 1 : 0;
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  double mean_symbol_error = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    for (const auto& e : errors) result.per_symbol_errors[s] += e[s];
    result.errors += result.per_symbol_errors[s];
    const auto n = result.per_symbol_trials[s];
    result.per_symbol_error[s] = n == 0 ? 0.0 : static_cast<double>(result.per_symbol_errors[s]) / static_cast<double>(n);
    mean_symbol_error += result.per_symbol_error[s] / 4.0;
  }
  // Equal-prior weighting; with fewer than 4 trials some symbols are empty.
  result.error_prob = trials >= 4 ? mean_symbol_error
                                  : static_cast<double>(result.errors) / static_cast<double>(trials);
  result.std_error = std::sqrt(result.error_prob * (1.0 - result.error_prob) / static_cast<double>(trials));
  return result;
}

SimulationResult estimate_error(const InferenceModel& inference, std::uint64_t trials, const RngSpec& rng,
                                const McOptions& options) {
  return estimate_error(TruthModel(inference.params()), inference, trials, rng, options);
}

}  // namespace qpskrx
