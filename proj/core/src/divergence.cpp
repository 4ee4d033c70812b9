#include "rdc/divergence.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace rdc {

namespace {

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("divergence arguments have dimensions " +
                            std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

}  // namespace

double airm(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_b(b.values());
  if (es_b.info() != Eigen::Success || es_b.eigenvalues().minCoeff() <= 0.0) {
    throw EigenFailure("eigendecomposition of the second argument failed");
  }
  const Eigen::MatrixXd inv_sqrt = es_b.operatorInverseSqrt();
  Eigen::MatrixXd whitened = inv_sqrt * a.values() * inv_sqrt;
  whitened = 0.5 * (whitened + whitened.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_w(whitened);
  if (es_w.info() != Eigen::Success || es_w.eigenvalues().minCoeff() <= 0.0) {
    throw EigenFailure("eigendecomposition of the whitened product failed");
  }
  return std::sqrt(es_w.eigenvalues().array().log().square().sum());
}

double bregman_logdet(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b);
  const double trace = b.llt().solve(a.values()).trace();
  const double log_det_ratio = a.log_det() - b.log_det();
  return std::max(0.0, trace - log_det_ratio - static_cast<double>(a.dim()));
}

double js_symmetrized(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b);
  const SpdMatrix midpoint = SpdMatrix::validate(0.5 * (a.values() + b.values()));
  return 0.5 * bregman_logdet(a, midpoint) + 0.5 * bregman_logdet(b, midpoint);
}

double stein(const SpdMatrix& a, const SpdMatrix& b) {
  require_same_dim(a, b);
  const Eigen::MatrixXd midpoint = 0.5 * (a.values() + b.values());
  Eigen::LLT<Eigen::MatrixXd> llt(midpoint);
  if (llt.info() != Eigen::Success) {
    throw NumericError("midpoint of two SPD matrices failed the Cholesky factorization");
  }
  const double log_det_mid = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return std::max(0.0, log_det_mid - 0.5 * (a.log_det() + b.log_det()));
}

Eigen::MatrixXd pairwise_stein(std::span<const SpdMatrix> points, int threads) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd result = Eigen::MatrixXd::Zero(n, n);
  detail::parallel_for(n, threads, [&](std::int64_t i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = stein(points[i], points[j]);
      result(i, j) = value;
      result(j, i) = value;
    }
  });
  return result;
}

}  // namespace rdc
