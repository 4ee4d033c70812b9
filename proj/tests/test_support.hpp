#pragma once

// Shared helpers for the test suites: deterministic random inputs and
// independent numerical oracles (kept out of the library on purpose; they
// must not share code with the paths they check).

#include <Eigen/Core>
#include <Eigen/LU>
#include <cmath>
#include <cstdint>

#include "rdc/rng.hpp"
#include "rdc/spd_matrix.hpp"

namespace test_support {

inline Eigen::MatrixXd random_matrix(int rows, int cols, rdc::Xoshiro256StarStar& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

inline rdc::SpdMatrix random_spd(int dim, rdc::Xoshiro256StarStar& rng) {
  const Eigen::MatrixXd g = random_matrix(dim, dim, rng);
  return rdc::SpdMatrix::validate(g * g.transpose() +
                                  Eigen::MatrixXd::Identity(dim, dim));
}

inline Eigen::MatrixXd random_invertible(int dim, rdc::Xoshiro256StarStar& rng) {
  for (;;) {
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(dim, dim) + 0.5 * random_matrix(dim, dim, rng);
    if (std::abs(m.determinant()) > 1e-6) return m;
  }
}

// Cofactor expansion along the first row; exact algorithmic independence
// from any Cholesky-based determinant. Only sensible for d <= 4.
inline double det_cofactor(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  double det = 0.0;
  double sign = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    det += sign * m(0, j) * det_cofactor(minor);
    sign = -sign;
  }
  return det;
}

// Matrix exponential by scaling-and-squaring with a Taylor series; an
// eigendecomposition-free check of the principal matrix logarithm.
inline Eigen::MatrixXd matrix_exp_taylor(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  int squarings = 0;
  double scale = 1.0;
  while (m.norm() * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXd t = m * scale;
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * t) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline rdc::SpdMatrix spd1(double value) {
  Eigen::MatrixXd m(1, 1);
  m(0, 0) = value;
  return rdc::SpdMatrix::validate(m);
}

}  // namespace test_support
