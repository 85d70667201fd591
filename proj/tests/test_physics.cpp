// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qpskrx/error.hpp"
#include "qpskrx/physics.hpp"

using namespace qpskrx;

TEST_CASE("alphabet geometry") {
  const QpskAlphabet a(2.0);
  for (int m = 0; m < 4; ++m) {
    const auto s = a.symbol(m);
    CHECK(s.norm_sq() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(s.phase() == doctest::Approx((2 * m + 1) * kPi / 4).epsilon(1e-15));
  }
  CHECK_THROWS_AS(a.symbol(4), DomainError);
  CHECK_THROWS_AS(a.symbol(-1), DomainError);
  CHECK_THROWS_AS(QpskAlphabet(-1.0), DomainError);
  CHECK_THROWS_AS(ComplexAmplitude(std::nan(""), 0.0), DomainError);
}

TEST_CASE("symbol_amplitude") {
  const auto zero = symbol_amplitude(QpskAlphabet(0.0), 2, 5);
  CHECK(zero.re() == 0.0);
  CHECK(zero.im() == 0.0);

  const auto unit = symbol_amplitude(QpskAlphabet(1.0), 0, 1);
  CHECK(unit.re() == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-15));
  CHECK(unit.im() == doctest::Approx(std::sin(kPi / 4)).epsilon(1e-15));

  const auto g = symbol_amplitude(QpskAlphabet::from_mean_photon_number(4.0), 1, 4);
  CHECK(g.norm_sq() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.phase() == doctest::Approx(3 * kPi / 4).epsilon(1e-15));

  CHECK_THROWS_AS(symbol_amplitude(QpskAlphabet(1.0), 0, 0), DomainError);
  CHECK_THROWS_AS(symbol_amplitude(QpskAlphabet(1.0), 7, 3), DomainError);
}

TEST_CASE("off_probability examples") {
  const ComplexAmplitude g(0.3, -0.2);
  CHECK(off_probability(g, g, DetectorModel{0.4, 0.0}, 0.0) == 1.0);
  CHECK(off_probability(ComplexAmplitude(1.0, 0.0), ComplexAmplitude(0.0, 0.0), DetectorModel{1.0, 0.0}, 0.0) ==
        doctest::Approx(0.3678794411714423216).epsilon(1e-15));
  CHECK(off_probability(g, g, DetectorModel{1.0, 9.1e-3}, 9.1e-3 / 10) ==
        doctest::Approx(0.99909041392443340103).epsilon(1e-15));
  CHECK_THROWS_AS(off_probability(g, g, DetectorModel{1.5, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(off_probability(g, g, DetectorModel{1.0, 0.0}, -1.0), DomainError);
}

TEST_CASE("off_probability_visibility examples") {
  CHECK(off_probability_visibility(0.0, 0.7, ChannelModel{0.8, 1.0}, 0.0) == 1.0);
  CHECK(off_probability_visibility(kPi, 0.5, ChannelModel{1.0, 1.0}, 0.0) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(off_probability_visibility(kPi / 2, 0.4, ChannelModel{0.65, 0.996}, 0.0) ==
        doctest::Approx(0.59452054797019433898).epsilon(1e-14));
  CHECK_THROWS_AS(off_probability_visibility(0.0, 0.4, ChannelModel{0.65, 1.2}, 0.0), DomainError);
}

TEST_CASE("sample_click threshold rule") {
  CHECK(sample_click(1.0, 0.0) == 0);
  CHECK(sample_click(1.0, 0.999999) == 0);
  CHECK(sample_click(0.0, 0.0) == 1);
  CHECK(sample_click(0.0, 0.5) == 1);
  CHECK(sample_click(0.5, 0.75) == 1);
  CHECK(sample_click(0.5, 0.25) == 0);
}

TEST_CASE("visibility model agrees with the general model at xi = 1") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  std::uniform_real_distribution<double> mag_sq(0.0, 3.0);
  std::uniform_real_distribution<double> eta(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double g2 = mag_sq(rng);
    const double pg = phase(rng);
    const double pb = phase(rng);
    const double e = eta(rng);
    const auto gamma = ComplexAmplitude::polar(std::sqrt(g2), pg);
    const auto beta = ComplexAmplitude::polar(std::sqrt(g2), pb);
    const double general = off_probability(gamma, beta, DetectorModel{e, 0.0}, 0.01);
    const double vis = off_probability_visibility(pg - pb, g2, ChannelModel{e, 1.0}, 0.01);
    CHECK(std::abs(general - vis) <= 1e-12);
  }
}

TEST_CASE("off probability bounds and monotonicity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double d2 = 5.0 * u(rng);
    const double eta = u(rng);
    const double nu = 0.1 * u(rng);
    const auto gamma = ComplexAmplitude::polar(std::sqrt(d2), 0.3);
    const ComplexAmplitude zero(0.0, 0.0);
    const double p = off_probability(gamma, zero, DetectorModel{eta, 0.0}, nu);
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
    const double bump = 0.05;
    const auto further = ComplexAmplitude::polar(std::sqrt(d2 + bump), 0.3);
    CHECK(off_probability(further, zero, DetectorModel{eta, 0.0}, nu) <= p);
    CHECK(off_probability(gamma, zero, DetectorModel{std::min(1.0, eta + bump), 0.0}, nu) <= p);
    CHECK(off_probability(gamma, zero, DetectorModel{eta, 0.0}, nu + bump) < p);
  }
}

TEST_CASE("alphabet symmetry: distances depend only on the index difference") {
  const QpskAlphabet a(1.7);
  for (int d = 0; d < 4; ++d) {
    const double ref = (symbol_amplitude(a, 0, 3) - symbol_amplitude(a, d, 3)).norm_sq();
    for (int m = 0; m < 4; ++m) {
      const double dist = (symbol_amplitude(a, m, 3) - symbol_amplitude(a, (m + d) % 4, 3)).norm_sq();
      CHECK(dist == doctest::Approx(ref).epsilon(1e-14));
    }
  }
}

TEST_CASE("quarter-turn cosine is exact and matches the continuous model") {
  CHECK(quarter_turn_cos(-1) == 0.0);
  CHECK(quarter_turn_cos(6) == -1.0);
  CHECK(quarter_turn_sin(-1) == -1.0);
  const ChannelModel ch{0.65, 0.996};
  for (int k = 0; k < 4; ++k) {
    CHECK(off_probability_quarter_turn(k, 0.4, ch, 1e-3) ==
          doctest::Approx(off_probability_visibility(k * kPi / 2, 0.4, ch, 1e-3)).epsilon(1e-14));
  }
  // Symmetric neighbours are bitwise equal.
  CHECK(off_probability_quarter_turn(1, 0.4, ch, 0.0) == off_probability_quarter_turn(3, 0.4, ch, 0.0));
}
