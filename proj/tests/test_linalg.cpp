#include <cmath>

#include "doctest.h"

#include "copcp/linalg.hpp"
#include "copcp/random.hpp"

using namespace copcp;

TEST_CASE("SymMatrix symmetrizes and validates its shape") {
  Mat m(2, 2);
  m << 1, 3, 1, 2;
  SymMatrix s(m);
  CHECK(s(0, 1) == doctest::Approx(2.0));
  CHECK(s(1, 0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(SymMatrix(Mat(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(SymMatrix::from_rows({{1, 2}, {3}}), DimensionMismatch);
  CHECK_THROWS_AS(SymMatrix::identity(2) + SymMatrix::identity(3), DimensionMismatch);
  CHECK_THROWS_AS(SymMatrix(0), std::invalid_argument);
}

TEST_CASE("arithmetic and helpers") {
  SymMatrix I = SymMatrix::identity(3), J = SymMatrix::ones(3);
  CHECK(inner(I, J) == doctest::Approx(3.0));
  CHECK(inner(J, J) == doctest::Approx(9.0));
  SymMatrix o = off_diag(J);
  CHECK(o(0, 0) == 0.0);
  CHECK(o(0, 2) == 1.0);
  CHECK(hadamard(I, J).mat().isApprox(I.mat()));
  CHECK((2.0 * J - J).mat().isApprox(J.mat()));
  CHECK((-I)(1, 1) == -1.0);
  CHECK(SymMatrix::diagonal(Vec::LinSpaced(3, 1, 3))(2, 2) == 3.0);
}

TEST_CASE("eigendecomposition reconstructs the matrix, values ascending") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7;
    SymMatrix s(rng.gaussian(n, n));
    EigSym e = eig_sym(s);
    for (int i = 1; i < n; ++i) CHECK(e.values(i - 1) <= e.values(i));
    Mat back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    CHECK((back - s.mat()).norm() < 1e-10 * (1 + s.mat().norm()));
    CHECK(min_eig(s) == doctest::Approx(e.values(0)));
  }
}

TEST_CASE("hermitian spectrum matches its real embedding") {
  Rng rng(12);
  const int n = 4;
  CMat g = rng.gaussian(n, n).cast<cplx>() + cplx(0, 1) * rng.gaussian(n, n).cast<cplx>();
  HermMatrix h(CMat(g + g.adjoint()));
  EigHerm e = eig_sym(h);
  Eigen::SelfAdjointEigenSolver<Mat> r(realify(h.mat()));
  // each eigenvalue appears twice in the embedding
  for (int i = 0; i < n; ++i) {
    CHECK(r.eigenvalues()(2 * i) == doctest::Approx(e.values(i)).epsilon(1e-10));
    CHECK(r.eigenvalues()(2 * i + 1) == doctest::Approx(e.values(i)).epsilon(1e-10));
  }
  CHECK(min_eig(h) == doctest::Approx(e.values(0)));
  CHECK(!HermMatrix(h).is_real(1e-12));
  CHECK(HermMatrix(SymMatrix::ones(3)).is_real());
}

TEST_CASE("PSD test respects the eigenvalue tolerance") {
  Tolerance tol;
  tol.eig_tol = 1e-8;
  SymMatrix a = SymMatrix::ones(3);
  CHECK(is_psd(a, tol));
  SymMatrix b = a - SymMatrix::identity(3) * 1e-9;
  CHECK(is_psd(b, tol));
  SymMatrix c = a - SymMatrix::identity(3) * 1e-6;
  CHECK_FALSE(is_psd(c, tol));
  CHECK(is_ewp(Mat::Ones(2, 2), 0.0));
  Mat neg = Mat::Ones(2, 2);
  neg(0, 1) = -1e-3;
  CHECK_FALSE(is_ewp(neg, 1e-7));
}

TEST_CASE("tolerances reject negative or non-finite values") {
  Tolerance t;
  CHECK_NOTHROW(t.validate());
  t.feas_tol = -1;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t.feas_tol = NAN;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("rng streams are reproducible and independent") {
  Rng a = Rng::stream(5, 3), b = Rng::stream(5, 3), c = Rng::stream(5, 4);
  const double x = a.uniform(), y = b.uniform(), z = c.uniform();
  CHECK(x == y);
  CHECK(x != z);
  Vec d = Rng(1).dirichlet(6);
  CHECK(d.sum() == doctest::Approx(1.0));
  CHECK(d.minCoeff() >= 0.0);
  Mat q = Rng(2).orthogonal(5);
  CHECK((q.transpose() * q - Mat::Identity(5, 5)).norm() < 1e-12);
}
