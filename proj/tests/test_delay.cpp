// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qpskrx/delay.hpp"
#include "qpskrx/error.hpp"

using namespace qpskrx;

namespace {

const DelayParams kDefaults{20.0, 0.37, 0.63, 0.0};

}  // namespace

TEST_CASE("split coefficients") {
  const auto sc = split_coefficients(kDefaults);
  CHECK(sc.r1_sq == doctest::Approx(0.0185).epsilon(1e-15));
  CHECK(sc.r2_sq == doctest::Approx(0.032093734080489047376).epsilon(1e-14));
  CHECK(sc.r1_sq + sc.t1_sq == doctest::Approx(1.0));
  CHECK(sc.r2_sq + sc.t2_sq == doctest::Approx(1.0));
  CHECK(sc.hold_fraction() + sc.swing_fraction() + sc.settle_fraction() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sc.swing_fraction() == doctest::Approx(0.63 / 20).epsilon(1e-14));

  const auto no_hold = split_coefficients(DelayParams{20.0, 0.0, 0.63, 0.0});
  CHECK(no_hold.r1_sq == 0.0);

  CHECK_THROWS_AS(split_coefficients(DelayParams{20.0, 20.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(split_coefficients(DelayParams{1.0, 0.37, 0.8, 0.0}), DomainError);
  CHECK_THROWS_AS(split_coefficients(DelayParams{20.0, 0.37, 0.63, 25.0}), DomainError);
}

TEST_CASE("hold segment") {
  const auto sc = split_coefficients(kDefaults);
  const ChannelModel ideal{1.0, 1.0};
  CHECK(off_prob_hold(2, 2, 1.3, sc, ideal) == 1.0);
  CHECK(off_prob_hold(2, 0, 1.0, sc, ideal) == doctest::Approx(0.92867169384128718748).epsilon(1e-14));
  CHECK(off_prob_hold(1, 0, 0.0, sc, ChannelModel{0.65, 0.996}) == 1.0);
}

TEST_CASE("swing analytic limits") {
  const auto sc = split_coefficients(kDefaults);
  CHECK(off_prob_swing_analytic(3, 0, 1, 0.0, sc, ChannelModel{0.65, 0.996}) == 1.0);
  const double g = 2.5;
  const double base = std::exp(-2.0 * 0.8 * sc.swing_fraction() * g);
  for (int m = 0; m < 4; ++m) {
    for (int next = 1; next < 4; ++next) {
      CHECK(off_prob_swing_analytic(m, 0, next, g, sc, ChannelModel{0.8, 0.0}) ==
            doctest::Approx(base).epsilon(1e-14));
    }
  }
  // No phase motion: same as a static segment nulling the common target.
  CHECK(off_prob_swing_analytic(1, 2, 2, g, sc, ChannelModel{1.0, 1.0}) ==
        doctest::Approx(std::exp(-2.0 * sc.swing_fraction() * g)).epsilon(1e-14));
}

TEST_CASE("swing span is the signed shortest rotation") {
  CHECK(swing_span(0, 0) == 0);
  CHECK(swing_span(0, 1) == 1);
  CHECK(swing_span(0, 2) == 2);
  CHECK(swing_span(0, 3) == -1);
  CHECK(swing_span(3, 0) == 1);
  CHECK(swing_span(2, 1) == -1);
}

TEST_CASE("swing discrete, two modes by hand") {
  // L = 2: phases 0 and span*pi/2, each mode carries half the swing intensity.
  const auto sc = split_coefficients(kDefaults);
  const double g = 3.0;
  const double mode = sc.swing_fraction() * g / 2.0;
  // m = prev_target = 0, span +1: first mode nulled, second mode at pi/2 off.
  const double expected = std::exp(-2.0 * mode * (1.0 - 1.0)) * std::exp(-2.0 * mode * (1.0 - 0.0));
  CHECK(off_prob_swing_discrete(0, 0, 1, g, sc, ChannelModel{1.0, 1.0}, 2) ==
        doctest::Approx(expected).epsilon(1e-14));
  // span +2 (antipodal): second mode sees the full pi offset.
  const double antipodal = std::exp(-2.0 * mode * 2.0);
  CHECK(off_prob_swing_discrete(0, 0, 2, g, sc, ChannelModel{1.0, 1.0}, 2) ==
        doctest::Approx(antipodal).epsilon(1e-14));
  CHECK(off_prob_swing_discrete(1, 0, 3, 0.0, sc, ChannelModel{0.7, 0.9}, 17) == 1.0);
  CHECK_THROWS_AS(off_prob_swing_discrete(1, 0, 3, 1.0, sc, ChannelModel{0.7, 0.9}, 1), DomainError);
}

TEST_CASE("discrete swing converges to the analytic limit with O(1/L) error") {
  // The endpoint-inclusive grid gives mean_j f(theta_j) = mean f + c / L + O(1/L^2)
  // with c = (f(0) + f(span)) / 2 - mean f, so the leading error is known exactly.
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> sym(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 40; ++draw) {
    const int m = sym(rng);
    const int prev = sym(rng);
    int next = sym(rng);
    if (next == prev) next = (prev + 1) % 4;
    const double g = 20.0 * u(rng);
    const ChannelModel ch{0.3 + 0.7 * u(rng), 0.9 + 0.1 * u(rng)};
    const DelayParams p{20.0, 0.37, 0.2 + 5.0 * u(rng), 0.0};
    const auto sc = split_coefficients(p);
    const double exact = off_prob_swing_analytic(m, prev, next, g, sc, ch);

    const double span = swing_span(prev, next) * kPi / 2.0;
    const double phi = quarter_turns(m - prev) * kPi / 2.0;
    const double mean = (std::sin(phi) - std::sin(phi - span)) / span;
    const double c = 0.5 * (std::cos(phi) + std::cos(phi - span)) - mean;
    const double a = ch.eta_total * sc.swing_fraction() * g;
    const double predicted = exact * std::expm1(2.0 * a * ch.xi * c / 1e4);

    const double e10 = std::abs(off_prob_swing_discrete(m, prev, next, g, sc, ch, 10) - exact);
    const double e100 = std::abs(off_prob_swing_discrete(m, prev, next, g, sc, ch, 100) - exact);
    const double d10k = off_prob_swing_discrete(m, prev, next, g, sc, ch, 10000) - exact;
    CHECK(std::abs(d10k - predicted) <= 1e-3 * std::abs(predicted) + 1e-13);
    CHECK(e100 <= e10 + 1e-13);
    CHECK(std::abs(d10k) <= e100 + 1e-13);
  }
}

TEST_CASE("discrete swing within 1e-6 at L = 1e4 for small per-mode signal") {
  const auto sc = split_coefficients(DelayParams{});
  for (int m = 0; m < 4; ++m)
    for (int prev = 0; prev < 4; ++prev)
      for (int next = 0; next < 4; ++next) {
        if (next == prev) continue;
        for (double g : {0.01, 0.1, 0.2}) {
          const ChannelModel ch{1.0, 1.0};
          CHECK(std::abs(off_prob_swing_discrete(m, prev, next, g, sc, ch, 10000) -
                         off_prob_swing_analytic(m, prev, next, g, sc, ch)) <= 1e-6);
        }
      }
}

TEST_CASE("bin probability with delay") {
  const ChannelModel ch{0.65, 0.996};
  const double g = 0.94;
  const double nu = 9.1e-4;

  SUBCASE("no transition reduces to the delay-free bin with discard loss") {
    for (double dt : {0.0, 0.2, 0.5, 1.1, 3.0}) {
      DelayParams p = kDefaults;
      p.delta_t = dt;
      for (int m = 0; m < 4; ++m) {
        const ChannelModel lossy{ch.eta_total * (1.0 - dt / p.t_bin), ch.xi};
        CHECK(off_prob_bin_with_delay(m, 1, 1, g, p, ch, nu) ==
              doctest::Approx(off_probability_quarter_turn(m - 1, g, lossy, nu)).epsilon(1e-13));
      }
    }
  }

  SUBCASE("discard beyond the ramp equals the delay-free model") {
    for (double dt : {1.0, 1.1, 2.0, 3.0}) {
      DelayParams p = kDefaults;
      p.delta_t = dt;
      const ChannelModel lossy{ch.eta_total * (1.0 - dt / p.t_bin), ch.xi};
      for (int m = 0; m < 4; ++m) {
        for (int prev = 0; prev < 4; ++prev) {
          for (int next = 0; next < 4; ++next) {
            CHECK(std::abs(off_prob_bin_with_delay(m, prev, next, g, p, ch, nu) -
                           off_probability_quarter_turn(m - next, g, lossy, nu)) <= 1e-12);
          }
        }
      }
    }
  }

  SUBCASE("half-microsecond discard drops the hold and 21% of the ramp") {
    DelayParams p = kDefaults;
    p.delta_t = 0.5;
    const auto keep = discard_keep_fractions(p);
    CHECK(keep.hold == 0.0);
    CHECK(keep.swing == doctest::Approx(1.0 - 0.13 / 0.63).epsilon(1e-14));
    CHECK(keep.settle == 1.0);
    const auto sc = split_coefficients(p);
    const double expected = std::exp(-nu) *
                            std::pow(off_prob_swing_analytic(2, 0, 1, g, sc, ch), keep.swing) *
                            off_prob_settle(2, 1, g, sc, ch);
    CHECK(off_prob_bin_with_delay(2, 0, 1, g, p, ch, nu) == doctest::Approx(expected).epsilon(1e-13));
  }

  SUBCASE("zero-length hold and swing give the delay-free bin") {
    const DelayParams p{20.0, 0.0, 0.0, 0.0};
    for (int m = 0; m < 4; ++m) {
      CHECK(std::abs(off_prob_bin_with_delay(m, 0, 3, g, p, ch, nu) -
                     off_probability_quarter_turn(m - 3, g, ch, nu)) <= 1e-12);
    }
  }

  SUBCASE("all outputs are probabilities") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> sym(0, 3);
    for (int i = 0; i < 500; ++i) {
      DelayParams p = kDefaults;
      p.delta_t = 3.0 * u(rng);
      const double v = off_prob_bin_with_delay(sym(rng), sym(rng), sym(rng), 10.0 * u(rng), p,
                                               ChannelModel{u(rng), u(rng)}, 0.01 * u(rng));
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("rotating all indices leaves the bin probability unchanged") {
  DelayParams p = kDefaults;
  p.delta_t = 0.3;
  const ChannelModel ch{0.65, 0.996};
  for (int m = 0; m < 4; ++m) {
    for (int next = 0; next < 4; ++next) {
      const double ref = off_prob_bin_with_delay(m, 0, next, 1.2, p, ch, 0.0);
      for (int shift = 1; shift < 4; ++shift) {
        CHECK(off_prob_bin_with_delay((m + shift) % 4, shift, (next + shift) % 4, 1.2, p, ch, 0.0) == ref);
      }
    }
  }
}
