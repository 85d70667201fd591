// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/delay.hpp"

#include <algorithm>
#include <cmath>

#include "qpskrx/error.hpp"

namespace qpskrx {

namespace {

void check_common(int m, int prev_target, double gamma_sq, const ChannelModel& ch) {
  if (m < 0 || m >= kNumSymbols || prev_target < 0 || prev_target >= kNumSymbols) {
    throw DomainError("symbol index out of range");
  }
  if (!(gamma_sq >= 0.0)) throw DomainError("gamma_sq must be >= 0");
  ch.validate();
}

// Exponent (mean click number) of a segment that nulls `nulled` and carries
// `fraction` of the bin intensity.
double static_segment_exponent(int m, int nulled, double fraction, double gamma_sq,
                               const ChannelModel& ch) {
  return 2.0 * ch.eta_total * fraction * gamma_sq * (1.0 - ch.xi * quarter_turn_cos(m - nulled));
}

double swing_exponent(int m, int prev_target, int new_target, double gamma_sq,
                      const SplitCoefficients& sc, const ChannelModel& ch) {
  const int span = swing_span(prev_target, new_target);
  if (span == 0) return static_segment_exponent(m, prev_target, sc.swing_fraction(), gamma_sq, ch);
  // Frame where prev_target sits at phase 0.
  const int rel = quarter_turns(m - prev_target);
  const double a = ch.eta_total * sc.swing_fraction() * gamma_sq;
  return 2.0 * a -
         4.0 * a / (span * kPi) * ch.xi * (quarter_turn_sin(rel) - quarter_turn_sin(rel - span));
}

}  // namespace

void DelayParams::validate() const {
  if (!(t_bin > 0.0) || !std::isfinite(t_bin)) throw DomainError("t_bin must be > 0");
  if (!(t_hold >= 0.0) || !(t_swing >= 0.0)) throw DomainError("t_hold and t_swing must be >= 0");
  if (t_hold + t_swing > t_bin) throw DomainError("t_hold + t_swing must not exceed t_bin");
  if (!(delta_t >= 0.0) || delta_t > t_bin) throw DomainError("delta_t must lie in [0, t_bin]");
}

SplitCoefficients split_coefficients(const DelayParams& p) {
  p.validate();
  SplitCoefficients sc;
  sc.r1_sq = p.t_hold / p.t_bin;
  sc.t1_sq = 1.0 - sc.r1_sq;
  if (sc.t1_sq <= 0.0) throw DomainError("degenerate split: hold segment fills the whole bin");
  sc.r2_sq = p.t_swing / (p.t_bin * sc.t1_sq);
  sc.t2_sq = 1.0 - sc.r2_sq;
  return sc;
}

SegmentKeep discard_keep_fractions(const DelayParams& p) {
  p.validate();
  auto keep = [](double start, double length, double dt) {
    if (length <= 0.0) return 1.0;
    const double covered = std::clamp(dt - start, 0.0, length);
    return 1.0 - covered / length;
  };
  return SegmentKeep{keep(0.0, p.t_hold, p.delta_t),
                     keep(p.t_hold, p.t_swing, p.delta_t),
                     keep(p.t_hold + p.t_swing, p.settle_duration(), p.delta_t)};
}

int swing_span(int prev_target, int new_target) noexcept {
  switch (quarter_turns(new_target - prev_target)) {
    case 1: return 1;
    case 2: return 2;
    case 3: return -1;
    default: return 0;
  }
}

double off_prob_hold(int m, int prev_target, double gamma_sq, const SplitCoefficients& sc,
                     const ChannelModel& ch) {
  check_common(m, prev_target, gamma_sq, ch);
  return std::exp(-static_segment_exponent(m, prev_target, sc.hold_fraction(), gamma_sq, ch));
}

double off_prob_settle(int m, int new_target, double gamma_sq, const SplitCoefficients& sc,
                       const ChannelModel& ch) {
  check_common(m, new_target, gamma_sq, ch);
  return std::exp(-static_segment_exponent(m, new_target, sc.settle_fraction(), gamma_sq, ch));
}

double off_prob_swing_analytic(int m, int prev_target, int new_target, double gamma_sq,
                               const SplitCoefficients& sc, const ChannelModel& ch) {
  check_common(m, prev_target, gamma_sq, ch);
  check_common(m, new_target, gamma_sq, ch);
  return std::exp(-swing_exponent(m, prev_target, new_target, gamma_sq, sc, ch));
}

double off_prob_swing_discrete(int m, int prev_target, int new_target, double gamma_sq,
                               const SplitCoefficients& sc, const ChannelModel& ch, long L) {
  check_common(m, prev_target, gamma_sq, ch);
  check_common(m, new_target, gamma_sq, ch);
  if (L < 2) throw DomainError("mode count L must be >= 2");
  const int span = swing_span(prev_target, new_target);
  const double rel_phase = quarter_turns(m - prev_target) * kPi / 2.0;
  const double mode_sq = ch.eta_total * sc.swing_fraction() * gamma_sq / static_cast<double>(L);
  double product = 1.0;
  for (long j = 1; j <= L; ++j) {
    const double theta = span * kPi / 2.0 * static_cast<double>(j - 1) / static_cast<double>(L - 1);
    product *= std::exp(-2.0 * mode_sq * (1.0 - ch.xi * std::cos(theta - rel_phase)));
  }
  return product;
}

double off_prob_bin_with_delay(int m, int prev_target, int new_target, double gamma_sq,
                               const DelayParams& p, const ChannelModel& ch, double nu_per_bin) {
  check_common(m, prev_target, gamma_sq, ch);
  check_common(m, new_target, gamma_sq, ch);
  if (!(nu_per_bin >= 0.0)) throw DomainError("nu_per_bin must be >= 0");
  const SplitCoefficients sc = split_coefficients(p);
  const SegmentKeep keep = discard_keep_fractions(p);
  const double exponent =
      keep.hold * static_segment_exponent(m, prev_target, sc.hold_fraction(), gamma_sq, ch) +
      keep.swing * swing_exponent(m, prev_target, new_target, gamma_sq, sc, ch) +
      keep.settle * static_segment_exponent(m, new_target, sc.settle_fraction(), gamma_sq, ch);
  return std::exp(-nu_per_bin - exponent);
}

}  // namespace qpskrx
