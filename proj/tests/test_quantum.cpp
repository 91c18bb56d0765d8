#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"

#include "copcp/quantum.hpp"
#include "copcp/random.hpp"

using namespace copcp;

namespace {

MatrixPair random_pair(Rng& rng, int n) {
  Mat A = rng.gaussian(n, n);
  CMat B = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      B(i, j) = cplx(rng.normal(), rng.normal());
      B(j, i) = std::conj(B(i, j));
    }
  for (int i = 0; i < n; ++i) B(i, i) = A(i, i);
  return MatrixPair(A, HermMatrix(B));
}

}  // namespace

TEST_CASE("Choi matrices are the sum of Phi(E_ij) (x) E_ij") {
  Rng rng(51);
  const int n = 3;
  MatrixPair p = random_pair(rng, n);
  for (auto [ck, mk] : {std::pair{ChoiKind::Cldui, MapKind::Duc}, std::pair{ChoiKind::Ldui, MapKind::Cduc}}) {
    CMat D = CMat::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CMat E = CMat::Zero(n, n);
        E(i, j) = 1;
        // Phi is linear; feed the Hermitian parts and recombine
        CMat H1 = 0.5 * (E + E.adjoint()), H2 = cplx(0, -0.5) * (E - E.adjoint());
        CMat F = apply_map(p, mk, HermMatrix(H1)).mat() + cplx(0, 1) * apply_map(p, mk, HermMatrix(H2)).mat();
        D += Eigen::kroneckerProduct(F, E);
      }
    CHECK((choi(p, ck).dense() - D).norm() < 1e-12);
  }
  CHECK(choi(p, ChoiKind::Ldui).X.nonZeros() <= 2 * n * n);
}

TEST_CASE("closed-form block positivity agrees with the operator") {
  Rng rng(52);
  int negatives_closed = 0, negatives_explicit = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 4;
    MatrixPair p = random_pair(rng, n);
    for (ChoiKind k : {ChoiKind::Ldui, ChoiKind::Cldui}) {
      ChoiMatrix X = choi(p, k);
      CVec v = rng.complex_normal(n), w = rng.complex_normal(n);
      const double a = block_positivity_value(p, k, v, w), b = choi_expectation(X, v, w);
      CHECK(std::abs(a - b) < 1e-9 * (1 + std::abs(b)));
      negatives_closed += a < 0;
      negatives_explicit += b < 0;
    }
  }
  CHECK(negatives_closed == negatives_explicit);
}

TEST_CASE("twirl is the orthogonal projection onto LDUI operators") {
  Rng rng(53);
  const int n = 3;
  for (int t = 0; t < 20; ++t) {
    CMat g(n * n, n * n);
    for (int i = 0; i < n * n; ++i)
      for (int j = 0; j < n * n; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    CMat X = g + g.adjoint();
    MatrixPair tw = twirl_ldui(X);
    const double best = (choi(tw, ChoiKind::Ldui).dense() - X).norm();
    MatrixPair other = random_pair(rng, n);
    CHECK(best <= (choi(other, ChoiKind::Ldui).dense() - X).norm() + 1e-12);
    // idempotent
    MatrixPair again = twirl_ldui(choi(tw, ChoiKind::Ldui).dense());
    CHECK((again.A() - tw.A()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(twirl_ldui(CMat::Zero(5, 5)), DimensionMismatch);
}

TEST_CASE("Markov-Choi function is scale invariant") {
  Rng rng(54);
  Mat A = rng.gaussian(5, 5).cwiseAbs();
  for (int t = 0; t < 10; ++t) {
    Vec x = rng.dirichlet(5);
    const double g = markov_choi_g(A, x);
    CHECK(markov_choi_g(A, 3.7 * x) == doctest::Approx(g).epsilon(1e-12));
  }
  Vec e = Vec::Zero(5);
  e(2) = 1;
  CHECK(markov_choi_g(A, e) == doctest::Approx(1 / (1 + A(2, 2))));
}

TEST_CASE("Markov-Choi transition for A = xJ") {
  for (int n : {3, 5}) {
    const double c = 1 - 1.0 / n;
    MarkovChoiReport lo = markov_choi_check(Mat::Constant(n, n, c - 1e-3));
    MarkovChoiReport hi = markov_choi_check(Mat::Constant(n, n, c + 1e-3));
    CHECK(lo.verdict.status == Verdict::NonMember);
    CHECK(lo.g_max > 1);
    CHECK(hi.verdict.status == Verdict::Member);
    Mat Ah = Mat::Constant(n, n, c + 1e-3);
    CMat B = -CMat::Ones(n, n);
    for (int i = 0; i < n; ++i) B(i, i) = Ah(i, i);
    MatrixPair ph(Ah, HermMatrix(B));
    CHECK(verify_pair_certificate(ph, hi.verdict));
  }
}

TEST_CASE("Dicke states of the Berman matrix") {
  SymMatrix X = berman_dnn();
  DickeState d = dicke(X);
  CHECK(d.X.n == 5);
  CMat dense = d.X.dense();
  CHECK((dense - dense.adjoint()).norm() < 1e-14);
  DickeClass c = dicke_class(X);
  CHECK(c.psd);
  CHECK(c.ppt);
  CHECK(c.separable.status == Verdict::NonMember);
  CHECK(c.witness_value < 0);
  CHECK(dicke_extendibility(X, 2).status == Verdict::Member);
  CHECK(dicke_extendibility(X, 3).status == Verdict::NonMember);
}

TEST_CASE("witness from a copositive matrix is sound on extendible states") {
  SymMatrix H = horn();
  SymMatrix N(Mat(H.mat().cwiseMax(0.0)));
  Witness w = witness_from_cop(H, N, 1);
  CHECK(w.level == 3);
  CHECK(w.membership.status == Verdict::Member);
  CHECK(w.evaluate(berman_dnn()) == doctest::Approx(inner(berman_dnn(), H)));
  // <P, M> >= 0 on everything the level-3 test accepts
  Rng rng(55);
  for (int t = 0; t < 10; ++t) {
    Mat F = rng.gaussian(5, 7).cwiseAbs();
    SymMatrix P(Mat(F * F.transpose()));
    if (dicke_extendibility(P, 3).status == Verdict::Member) CHECK(w.evaluate(P) >= -1e-7);
  }
  CHECK_THROWS_AS(witness_from_cop(H, SymMatrix::ones(5) * 2.0, 1), DiagonalMismatch);
  CHECK_THROWS_AS(witness_from_cop(H, N, 0), PreconditionError);
}

TEST_CASE("extendible entangled search") {
  CHECK_THROWS_AS(find_extendible_entangled(4, 3), PreconditionError);
  ExtendibleEntangled e = find_extendible_entangled(5, 3);
  CHECK(e.extendible.status == Verdict::Member);
  CHECK(e.separable.status == Verdict::NonMember);
  CHECK(e.witness_value < 0);
  CHECK(verify_certificate(e.P, e.extendible));
  CHECK(verify_certificate(e.P, e.separable));
}

TEST_CASE("necessary star check") {
  SymMatrix H = horn();
  Mat A = 0.5 * H.mat();
  MatrixPair p(A, HermMatrix(SymMatrix::diagonal(A.diagonal())));
  CHECK(ext_necessary_star(p, 1).status == Check::Fail);
  CHECK(ext_necessary_star(p, 2).status == Check::Pass);
  MatrixPair jI(Mat::Ones(4, 4), HermMatrix(SymMatrix::identity(4)));
  for (int r = 1; r <= 3; ++r) CHECK(ext_necessary_star(jI, r).status == Check::Pass);
  CHECK_THROWS_AS(ext_necessary_star(jI, 0), UnsupportedLevel);
}
