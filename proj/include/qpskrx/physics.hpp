// SPDX-License-Identifier: Apache-2.0
//
// QPSK alphabet, displacement arithmetic and single-photon click statistics.
//
// Two off-probability models live here:
//   * off_probability: general displacement beta, perfect interference
//     (exp(-nu - eta |gamma - beta|^2)).
//   * off_probability_visibility: displacement magnitude matched to the
//     signal, relative phase theta, interference visibility xi
//     (exp(-nu - 2 eta (1 - xi cos theta) |gamma|^2)).
// The receiver models use the second one.
#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace qpskrx {

inline constexpr int kNumSymbols = 4;
inline constexpr double kPi = 3.14159265358979323846;

using Outcome = std::uint8_t;  // 0 = off, 1 = on (click)

/// Coherent-state amplitude in phase space. Always finite.
class ComplexAmplitude {
 public:
  constexpr ComplexAmplitude() = default;
  ComplexAmplitude(double re, double im);
  static ComplexAmplitude polar(double magnitude, double phase);

  double re() const noexcept { return value_.real(); }
  double im() const noexcept { return value_.imag(); }
  double norm_sq() const noexcept { return std::norm(value_); }
  /// Phase reduced to [0, 2pi).
  double phase() const noexcept;
  std::complex<double> value() const noexcept { return value_; }

  friend ComplexAmplitude operator-(const ComplexAmplitude& a, const ComplexAmplitude& b) {
    return ComplexAmplitude(a.re() - b.re(), a.im() - b.im());
  }
  friend ComplexAmplitude operator+(const ComplexAmplitude& a, const ComplexAmplitude& b) {
    return ComplexAmplitude(a.re() + b.re(), a.im() + b.im());
  }

 private:
  std::complex<double> value_{0.0, 0.0};
};

/// The four symbols |alpha| exp(i (2m+1) pi/4), m = 0..3.
class QpskAlphabet {
 public:
  explicit QpskAlphabet(double magnitude);
  static QpskAlphabet from_mean_photon_number(double alpha_sq);

  double magnitude() const noexcept { return magnitude_; }
  double mean_photon_number() const noexcept { return magnitude_ * magnitude_; }
  static double symbol_phase(int m);
  ComplexAmplitude symbol(int m) const;

 private:
  double magnitude_;
};

struct DetectorModel {
  double eta = 1.0;           // detection efficiency
  double nu_per_state = 0.0;  // expected dark counts over a full signal state

  void validate() const;
};

struct ChannelModel {
  double eta_total = 1.0;  // transmittance x detector efficiency
  double xi = 1.0;         // interference visibility

  void validate() const;
};

/// Reduces a symbol difference to {0,1,2,3}.
constexpr int quarter_turns(int diff) noexcept { return ((diff % 4) + 4) % 4; }

/// cos(k pi/2), exact.
constexpr double quarter_turn_cos(int k) noexcept {
  constexpr std::array<double, 4> table{1.0, 0.0, -1.0, 0.0};
  return table[static_cast<std::size_t>(quarter_turns(k))];
}

/// sin(k pi/2), exact.
constexpr double quarter_turn_sin(int k) noexcept {
  constexpr std::array<double, 4> table{0.0, 1.0, 0.0, -1.0};
  return table[static_cast<std::size_t>(quarter_turns(k))];
}

/// Per-bin amplitude alpha_m / sqrt(M).
ComplexAmplitude symbol_amplitude(const QpskAlphabet& alphabet, int m, int stages);

/// exp(-nu_per_bin - eta |gamma - beta|^2).
double off_probability(const ComplexAmplitude& gamma, const ComplexAmplitude& beta,
                       const DetectorModel& det, double nu_per_bin);

/// Mean click number nu + 2 eta (1 - xi cos theta) |gamma|^2 for a matched displacement.
double mean_clicks_visibility(double theta, double gamma_sq, const ChannelModel& ch,
                              double nu_per_bin);

/// exp(-mean_clicks_visibility(...)).
double off_probability_visibility(double theta, double gamma_sq, const ChannelModel& ch,
                                  double nu_per_bin);

/// Same as off_probability_visibility with theta = k pi/2 evaluated exactly.
double off_probability_quarter_turn(int k, double gamma_sq, const ChannelModel& ch,
                                    double nu_per_bin);

/// 0 (off) if draw < p_off, else 1 (on).
constexpr Outcome sample_click(double p_off, double draw) noexcept { return draw < p_off ? 0 : 1; }

}  // namespace qpskrx
