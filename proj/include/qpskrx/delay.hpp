// SPDX-License-Identifier: Apache-2.0
//
// Feedback-delay model of one time bin. After a feedback decision the
// displacement phase is stale for t_hold, ramps linearly for t_swing and then
// sits at the new target for the rest of the bin:
//
//   |<- t_hold ->|<- t_swing ->|<------------ settle ------------>|
//   0                                                            t_bin
//
// Each segment is an independent beam-splitter branch carrying a fixed
// fraction of the bin intensity (r1^2, t1^2 r2^2, t1^2 t2^2), so the bin's
// off probability is the product of the three segment off probabilities.
// A discard window [0, delta_t) at the start of the bin acts as linear loss on
// whatever part of each segment it covers.
#pragma once

#include "qpskrx/physics.hpp"

namespace qpskrx {

/// Durations in microseconds.
struct DelayParams {
  double t_bin = 20.0;
  double t_hold = 0.37;
  double t_swing = 0.63;
  double delta_t = 0.0;  // discard window per bin boundary

  void validate() const;
  double settle_duration() const noexcept { return t_bin - t_hold - t_swing; }
};

struct SplitCoefficients {
  double r1_sq = 0.0;
  double t1_sq = 1.0;
  double r2_sq = 0.0;
  double t2_sq = 1.0;

  double hold_fraction() const noexcept { return r1_sq; }
  double swing_fraction() const noexcept { return t1_sq * r2_sq; }
  double settle_fraction() const noexcept { return t1_sq * t2_sq; }
};

/// Fractions of each segment surviving the discard window.
struct SegmentKeep {
  double hold = 1.0;
  double swing = 1.0;
  double settle = 1.0;
};

/// r1^2 = t_hold / t_bin, r2^2 = t_swing / (t_bin t1^2). Throws DomainError when t_hold = t_bin.
SplitCoefficients split_coefficients(const DelayParams& p);

SegmentKeep discard_keep_fractions(const DelayParams& p);

/// Signed shortest phase move from prev_target to new_target, in quarter turns: {-1, 0, +1, +2}.
int swing_span(int prev_target, int new_target) noexcept;

/// Hold segment: the displacement still nulls prev_target.
double off_prob_hold(int m, int prev_target, double gamma_sq, const SplitCoefficients& sc,
                     const ChannelModel& ch);

/// Settle segment: the displacement nulls new_target.
double off_prob_settle(int m, int new_target, double gamma_sq, const SplitCoefficients& sc,
                       const ChannelModel& ch);

/// Continuous ramp from prev_target to new_target, infinitely fine mode split.
/// When the targets coincide the ramp degenerates to a hold at that phase.
double off_prob_swing_analytic(int m, int prev_target, int new_target, double gamma_sq,
                               const SplitCoefficients& sc, const ChannelModel& ch);

/// The same ramp cut into L equal modes with phases span*pi/2*(j-1)/(L-1), j = 1..L.
double off_prob_swing_discrete(int m, int prev_target, int new_target, double gamma_sq,
                               const SplitCoefficients& sc, const ChannelModel& ch, long L);

/// Off probability of a whole bin after a feedback transition, including the
/// discard window p.delta_t and dark counts.
double off_prob_bin_with_delay(int m, int prev_target, int new_target, double gamma_sq,
                               const DelayParams& p, const ChannelModel& ch, double nu_per_bin);

}  // namespace qpskrx
