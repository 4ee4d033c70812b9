#include "rdc/spd_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <string>
#include <utility>

namespace rdc {

namespace {

double llt_log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

double cholesky_log_det(const Eigen::MatrixXd& symmetric) {
  Eigen::LLT<Eigen::MatrixXd> llt(symmetric);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Cholesky factorization failed: matrix is not positive definite");
  }
  return llt_log_det(llt);
}

SpdMatrix SpdMatrix::validate(const Eigen::MatrixXd& values) {
  if (values.rows() == 0 || values.rows() != values.cols()) {
    throw DataError("SPD matrix must be square and non-empty, got " +
                    std::to_string(values.rows()) + "x" + std::to_string(values.cols()));
  }
  if (!values.allFinite()) {
    throw NonFinite("matrix contains a non-finite entry");
  }
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double a = values(i, j);
      const double b = values(j, i);
      const double diff = std::abs(a - b);
      if (diff > kSymmetryTolerance * std::max(1.0, std::abs(a)) ||
          diff > kSymmetryTolerance * std::max(1.0, std::abs(b))) {
        throw NotSymmetric("entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") differs from its transpose beyond tolerance");
      }
    }
  }
  // Rounding asymmetry within tolerance is folded away before factorizing.
  Eigen::MatrixXd sym = 0.5 * (values + values.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("matrix is not positive definite (Cholesky pivot <= 0)");
  }
  const double log_det = llt_log_det(llt);
  return SpdMatrix(std::move(sym), std::move(llt), log_det);
}

Eigen::MatrixXd sym_log(const SpdMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.values());
  if (es.info() != Eigen::Success) {
    throw EigenFailure("symmetric eigendecomposition did not converge");
  }
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw EigenFailure("eigenvalue <= 0 for a matrix that passed the Cholesky check");
  }
  const Eigen::MatrixXd log_diag = es.eigenvalues().array().log().matrix().asDiagonal();
  Eigen::MatrixXd result = es.eigenvectors() * log_diag * es.eigenvectors().transpose();
  return 0.5 * (result + result.transpose());
}

SpdMatrix congruence(const SpdMatrix& a, const Eigen::MatrixXd& x) {
  if (x.rows() != a.dim() || x.cols() != a.dim()) {
    throw DimensionMismatch("congruence transform must be " + std::to_string(a.dim()) +
                            "x" + std::to_string(a.dim()));
  }
  if (!x.allFinite()) {
    throw NonFinite("congruence transform contains a non-finite entry");
  }
  if (std::abs(x.determinant()) <= kSingularDeterminantGuard) {
    throw SingularTransform("congruence transform is singular within the determinant guard");
  }
  return SpdMatrix::validate(x * a.values() * x.transpose());
}

SpdMatrix inverse(const SpdMatrix& a) {
  const Eigen::MatrixXd inv =
      a.llt().solve(Eigen::MatrixXd::Identity(a.dim(), a.dim()));
  return SpdMatrix::validate(0.5 * (inv + inv.transpose()));
}

}  // namespace rdc
