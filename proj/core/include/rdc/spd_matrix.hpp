#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "rdc/errors.hpp"

namespace rdc {

/// Relative tolerance of the symmetry check in SpdMatrix::validate.
inline constexpr double kSymmetryTolerance = 1e-10;

/// Determinant guard below which a congruence transform counts as singular.
inline constexpr double kSingularDeterminantGuard = 1e-12;

/// A validated symmetric positive-definite matrix; the points of the
/// manifold all divergences in this library operate on.
///
/// Construction goes through validate(), which checks finiteness, symmetry
/// within kSymmetryTolerance (relative), and positive definiteness via
/// Cholesky. The stored values are the symmetrized input (M + M^T)/2, so
/// values() is exactly symmetric. The Cholesky factor and log-determinant
/// are computed once here and reused by every divergence evaluation.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class SpdMatrix {
 public:
  /// Validates a square matrix of finite reals as SPD.
  /// Throws NonFinite, NotSymmetric, or NotPositiveDefinite.
  static SpdMatrix validate(const Eigen::MatrixXd& values);

  int dim() const { return static_cast<int>(values_.rows()); }
  const Eigen::MatrixXd& values() const { return values_; }

  /// log(det(A)), computed at construction as 2 * sum(log(diag(L))).
  double log_det() const { return log_det_; }

  /// Cached Cholesky factorization (A = L L^T).
  const Eigen::LLT<Eigen::MatrixXd>& llt() const { return llt_; }

 private:
  SpdMatrix(Eigen::MatrixXd values, Eigen::LLT<Eigen::MatrixXd> llt, double log_det)
      : values_(std::move(values)), llt_(std::move(llt)), log_det_(log_det) {}

  Eigen::MatrixXd values_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_det_;
};

/// Log-determinant of an already-symmetric matrix via one Cholesky
/// factorization. Throws NotPositiveDefinite when a pivot is <= 0.
double cholesky_log_det(const Eigen::MatrixXd& symmetric);

/// Principal matrix logarithm of an SPD matrix via symmetric
/// eigendecomposition: U log(diag) U^T. The result is symmetric but in
/// general indefinite. Throws EigenFailure on solver breakdown.
Eigen::MatrixXd sym_log(const SpdMatrix& a);

/// X A X^T for invertible X, revalidated as SPD.
/// Throws SingularTransform when |det X| <= kSingularDeterminantGuard.
SpdMatrix congruence(const SpdMatrix& a, const Eigen::MatrixXd& x);

/// Inverse through the cached Cholesky factor; always SPD.
SpdMatrix inverse(const SpdMatrix& a);

}  // namespace rdc
