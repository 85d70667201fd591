// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/physics.hpp"

#include <cmath>
#include <string>

#include "qpskrx/error.hpp"

namespace qpskrx {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

ComplexAmplitude::ComplexAmplitude(double re, double im) : value_(re, im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw DomainError("complex amplitude must be finite");
  }
}

ComplexAmplitude ComplexAmplitude::polar(double magnitude, double phase) {
  return ComplexAmplitude(magnitude * std::cos(phase), magnitude * std::sin(phase));
}

double ComplexAmplitude::phase() const noexcept {
  double p = std::arg(value_);
  if (p < 0.0) p += 2.0 * kPi;
  return p >= 2.0 * kPi ? 0.0 : p;
}

QpskAlphabet::QpskAlphabet(double magnitude) : magnitude_(magnitude) {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw DomainError("alphabet magnitude must be finite and >= 0");
  }
}

QpskAlphabet QpskAlphabet::from_mean_photon_number(double alpha_sq) {
  if (!(alpha_sq >= 0.0)) throw DomainError("mean photon number must be >= 0");
  return QpskAlphabet(std::sqrt(alpha_sq));
}

double QpskAlphabet::symbol_phase(int m) {
  if (m < 0 || m >= kNumSymbols) throw DomainError("symbol index out of range: " + std::to_string(m));
  return (2 * m + 1) * kPi / 4.0;
}

ComplexAmplitude QpskAlphabet::symbol(int m) const {
  return ComplexAmplitude::polar(magnitude_, symbol_phase(m));
}

void DetectorModel::validate() const {
  require_unit_interval(eta, "eta");
  if (!(nu_per_state >= 0.0) || !std::isfinite(nu_per_state)) {
    throw DomainError("nu_per_state must be finite and >= 0");
  }
}

void ChannelModel::validate() const {
  require_unit_interval(eta_total, "eta_total");
  require_unit_interval(xi, "xi");
}

ComplexAmplitude symbol_amplitude(const QpskAlphabet& alphabet, int m, int stages) {
  if (stages < 1) throw DomainError("stage count M must be >= 1");
  const double phase = QpskAlphabet::symbol_phase(m);
  return ComplexAmplitude::polar(alphabet.magnitude() / std::sqrt(static_cast<double>(stages)), phase);
}

double off_probability(const ComplexAmplitude& gamma, const ComplexAmplitude& beta,
                       const DetectorModel& det, double nu_per_bin) {
  det.validate();
  if (!(nu_per_bin >= 0.0)) throw DomainError("nu_per_bin must be >= 0");
  return std::exp(-nu_per_bin - det.eta * (gamma - beta).norm_sq());
}

double mean_clicks_visibility(double theta, double gamma_sq, const ChannelModel& ch,
                              double nu_per_bin) {
  return nu_per_bin + 2.0 * ch.eta_total * (1.0 - ch.xi * std::cos(theta)) * gamma_sq;
}

double off_probability_visibility(double theta, double gamma_sq, const ChannelModel& ch,
                                  double nu_per_bin) {
  ch.validate();
  if (!(gamma_sq >= 0.0)) throw DomainError("gamma_sq must be >= 0");
  if (!(nu_per_bin >= 0.0)) throw DomainError("nu_per_bin must be >= 0");
  return std::exp(-mean_clicks_visibility(theta, gamma_sq, ch, nu_per_bin));
}

double off_probability_quarter_turn(int k, double gamma_sq, const ChannelModel& ch,
                                    double nu_per_bin) {
  ch.validate();
  if (!(gamma_sq >= 0.0)) throw DomainError("gamma_sq must be >= 0");
  if (!(nu_per_bin >= 0.0)) throw DomainError("nu_per_bin must be >= 0");
  return std::exp(-nu_per_bin - 2.0 * ch.eta_total * (1.0 - ch.xi * quarter_turn_cos(k)) * gamma_sq);
}

}  // namespace qpskrx
