#pragma once

#include <Eigen/Core>
#include <span>

#include "rdc/spd_matrix.hpp"

namespace rdc {

/// Affine-invariant Riemannian metric: ||log(B^{-1/2} A B^{-1/2})||_F.
/// Geodesic distance on the SPD manifold; needs two symmetric
/// eigendecompositions per evaluation and is therefore markedly slower
/// than stein() on the same pair.
double airm(const SpdMatrix& a, const SpdMatrix& b);

/// Log-det Bregman divergence, generated by phi(A) = -log det A:
/// tr(B^{-1} A) - log det(B^{-1} A) - d. Asymmetric in its arguments.
double bregman_logdet(const SpdMatrix& a, const SpdMatrix& b);

/// Jensen-Shannon symmetrization of bregman_logdet:
/// (D(A, M) + D(B, M)) / 2 with M = (A+B)/2. Computed through
/// bregman_logdet so it stays an independent route to the same value as
/// stein(); the agreement of the two is checked by the test suite.
double js_symmetrized(const SpdMatrix& a, const SpdMatrix& b);

/// Symmetric Stein divergence (Jensen-Bregman log-det divergence):
/// log det((A+B)/2) - (log det A + log det B) / 2.
/// Uses the cached factors of A and B plus one Cholesky of the midpoint;
/// never forms an explicit determinant. Exactly symmetric in its arguments.
double stein(const SpdMatrix& a, const SpdMatrix& b);

/// Full pairwise Stein matrix (symmetric, zero diagonal). Entries are
/// computed independently, so the result is identical for any thread count.
Eigen::MatrixXd pairwise_stein(std::span<const SpdMatrix> points, int threads = 1);

}  // namespace rdc
