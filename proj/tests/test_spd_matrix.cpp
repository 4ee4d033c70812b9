#include <doctest.h>

#include <Eigen/Core>
#include <cmath>

#include "rdc/spd_matrix.hpp"
#include "test_support.hpp"

using namespace rdc;
using test_support::diag2;

TEST_CASE("validate accepts the identity") {
  const auto a = SpdMatrix::validate(Eigen::MatrixXd::Identity(3, 3));
  CHECK(a.dim() == 3);
  CHECK(a.values().isApprox(Eigen::MatrixXd::Identity(3, 3)));
}

TEST_CASE("validate rejects an indefinite diagonal") {
  CHECK_THROWS_AS((void)SpdMatrix::validate(diag2(1.0, -1.0)), NotPositiveDefinite);
}

TEST_CASE("validate rejects asymmetric input") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS((void)SpdMatrix::validate(m), NotSymmetric);
}

TEST_CASE("validate rejects non-finite entries") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)SpdMatrix::validate(m), NonFinite);
  m(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)SpdMatrix::validate(m), NonFinite);
}

TEST_CASE("validate rejects non-square input") {
  CHECK_THROWS_AS((void)SpdMatrix::validate(Eigen::MatrixXd::Ones(2, 3)), DataError);
}

TEST_CASE("validate symmetrizes rounding-level asymmetry") {
  Eigen::MatrixXd m(2, 2);
  m << 4.0, 1.0 + 5e-12, 1.0, 3.0;
  const auto a = SpdMatrix::validate(m);
  CHECK(a.values()(0, 1) == a.values()(1, 0));
}

TEST_CASE("log_det closed forms") {
  CHECK(SpdMatrix::validate(Eigen::MatrixXd::Identity(3, 3)).log_det() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(SpdMatrix::validate(diag2(2.0, 3.0)).log_det() ==
        doctest::Approx(std::log(6.0)).epsilon(1e-12));
  const double e = std::exp(1.0);
  CHECK(SpdMatrix::validate(diag2(e, e)).log_det() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("log_det matches a cofactor-expansion determinant oracle for d <= 4") {
  Xoshiro256StarStar rng(101);
  for (int dim = 2; dim <= 4; ++dim) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = test_support::random_spd(dim, rng);
      const double expected = std::log(test_support::det_cofactor(a.values()));
      CHECK(std::abs(a.log_det() - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("sym_log of the identity is zero") {
  const auto a = SpdMatrix::validate(Eigen::MatrixXd::Identity(2, 2));
  CHECK(sym_log(a).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("sym_log takes elementwise logs of diagonal matrices") {
  const double e = std::exp(1.0);
  const Eigen::MatrixXd result = sym_log(SpdMatrix::validate(diag2(e, e * e)));
  CHECK(result(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(result(0, 1)) < 1e-12);
}

TEST_CASE("sym_log is symmetric and the matrix exponential reconstructs the input") {
  Xoshiro256StarStar rng(202);
  for (const int dim : {2, 5, 14}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = test_support::random_spd(dim, rng);
      const Eigen::MatrixXd l = sym_log(a);
      CHECK((l - l.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
      const Eigen::MatrixXd reconstructed = test_support::matrix_exp_taylor(l);
      CHECK((reconstructed - a.values()).norm() <= 1e-8);
    }
  }
}

TEST_CASE("congruence closed forms") {
  Xoshiro256StarStar rng(303);
  const auto a = test_support::random_spd(3, rng);

  SUBCASE("identity transform returns the same matrix") {
    const auto b = congruence(a, Eigen::MatrixXd::Identity(3, 3));
    CHECK((b.values() - a.values()).norm() <= 1e-12);
  }
  SUBCASE("diagonal congruence of the identity squares the diagonal") {
    const auto id = SpdMatrix::validate(Eigen::MatrixXd::Identity(2, 2));
    const auto b = congruence(id, diag2(2.0, 3.0));
    CHECK(b.values()(0, 0) == doctest::Approx(4.0));
    CHECK(b.values()(1, 1) == doctest::Approx(9.0));
  }
  SUBCASE("scalar transform scales quadratically") {
    const auto b = congruence(a, 2.0 * Eigen::MatrixXd::Identity(3, 3));
    CHECK((b.values() - 4.0 * a.values()).norm() <= 1e-10);
  }
}

TEST_CASE("congruence rejects singular transforms") {
  Xoshiro256StarStar rng(404);
  const auto a = test_support::random_spd(2, rng);
  CHECK_THROWS_AS((void)congruence(a, Eigen::MatrixXd::Zero(2, 2)), SingularTransform);
}

TEST_CASE("congruence shifts the log-determinant by 2 log |det X|") {
  Xoshiro256StarStar rng(505);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = test_support::random_spd(5, rng);
    const Eigen::MatrixXd x = test_support::random_invertible(5, rng);
    const double expected = a.log_det() + 2.0 * std::log(std::abs(x.determinant()));
    CHECK(std::abs(congruence(a, x).log_det() - expected) <= 1e-8);
  }
}

TEST_CASE("inverse closed forms") {
  const auto id = SpdMatrix::validate(Eigen::MatrixXd::Identity(3, 3));
  CHECK((inverse(id).values() - id.values()).norm() <= 1e-14);

  const auto d = SpdMatrix::validate(diag2(2.0, 4.0));
  CHECK(inverse(d).values()(0, 0) == doctest::Approx(0.5));
  CHECK(inverse(d).values()(1, 1) == doctest::Approx(0.25));

  const auto scaled = SpdMatrix::validate(2.0 * Eigen::MatrixXd::Identity(3, 3));
  CHECK((inverse(scaled).values() - 0.5 * Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("inverse round trips and negates the log-determinant") {
  Xoshiro256StarStar rng(606);
  for (const int dim : {2, 7, 14}) {
    const auto a = test_support::random_spd(dim, rng);
    const auto inv = inverse(a);
    CHECK((a.values() * inv.values() - Eigen::MatrixXd::Identity(dim, dim)).norm() <= 1e-8);
    CHECK(std::abs(inv.log_det() + a.log_det()) <= 1e-9);
  }
}

TEST_CASE("cholesky_log_det rejects indefinite input") {
  CHECK_THROWS_AS((void)cholesky_log_det(diag2(2.0, 0.0)), NotPositiveDefinite);
}
