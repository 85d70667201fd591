// SPDX-License-Identifier: Apache-2.0
#include "qpskrx/bounds.hpp"

#include <cmath>
#include <string>

#include "qpskrx/error.hpp"
#include "qpskrx/physics.hpp"

namespace qpskrx {

namespace {

void check_alpha_sq(double alpha_sq) {
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) throw DomainError("alpha_sq must be finite and >= 0");
}

}  // namespace

double sql_heterodyne(double alpha_sq) {
  check_alpha_sq(alpha_sq);
  const double c = 1.0 + std::erf(std::sqrt(alpha_sq / 2.0));
  return 1.0 - 0.25 * c * c;
}

double sql_lossy(double alpha_sq, double eta_total) {
  if (!(eta_total >= 0.0 && eta_total <= 1.0)) throw DomainError("eta_total must lie in [0, 1]");
  return sql_heterodyne(eta_total * alpha_sq);
}

std::array<std::complex<double>, 4> qpsk_gram_row(double alpha_sq) {
  check_alpha_sq(alpha_sq);
  const std::array<std::complex<double>, 4> i_pow{{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}};
  std::array<std::complex<double>, 4> row{};
  for (std::size_t k = 0; k < row.size(); ++k) row[k] = std::exp(alpha_sq * (i_pow[k] - 1.0));
  return row;
}

std::array<double, 4> qpsk_gram_eigenvalues(double alpha_sq) {
  const auto row = qpsk_gram_row(alpha_sq);
  std::array<double, 4> lambda{};
  for (int j = 0; j < 4; ++j) {
    std::complex<double> sum{0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
      // exp(-2 pi i j k / 4) = (-i)^(jk), exact
      const int q = quarter_turns(-j * k);
      sum += row[static_cast<std::size_t>(k)] * std::complex<double>(quarter_turn_cos(q), quarter_turn_sin(q));
    }
    double v = sum.real();
    if (v < -1e-12) throw NumericError("negative Gram eigenvalue " + std::to_string(v));
    lambda[static_cast<std::size_t>(j)] = v < 0.0 ? 0.0 : v;
  }
  return lambda;
}

double helstrom_qpsk(double alpha_sq) {
  double root_sum = 0.0;
  for (double v : qpsk_gram_eigenvalues(alpha_sq)) root_sum += std::sqrt(v);
  return 1.0 - root_sum * root_sum / 16.0;
}

BoundPoint bound_point(double alpha_sq, double eta_total) {
  return BoundPoint{alpha_sq, sql_heterodyne(alpha_sq), sql_lossy(alpha_sq, eta_total), helstrom_qpsk(alpha_sq)};
}

}  // namespace qpskrx
