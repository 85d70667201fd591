// SPDX-License-Identifier: Apache-2.0
//
// Reference error probabilities: heterodyne SQL and the Helstrom bound.
#pragma once

#include <array>
#include <complex>

namespace qpskrx {

/// 1 - (1 + erf(sqrt(alpha_sq / 2)))^2 / 4.
double sql_heterodyne(double alpha_sq);

/// SQL seen through a total efficiency eta_total.
double sql_lossy(double alpha_sq, double eta_total);

/// First row c_k = <alpha_0|alpha_k> = exp(alpha_sq (i^k - 1)) of the circulant Gram matrix.
std::array<std::complex<double>, 4> qpsk_gram_row(double alpha_sq);

/// Eigenvalues of the Gram matrix from the DFT of its first row (real, >= 0).
std::array<double, 4> qpsk_gram_eigenvalues(double alpha_sq);

/// Minimum error for four equiprobable symmetric pure states, attained by the
/// square-root measurement: 1 - (sum_j sqrt(lambda_j))^2 / 16.
double helstrom_qpsk(double alpha_sq);

struct BoundPoint {
  double alpha_sq = 0.0;
  double sql = 0.0;
  double sql_lossy = 0.0;
  double helstrom = 0.0;
};

BoundPoint bound_point(double alpha_sq, double eta_total);

}  // namespace qpskrx
