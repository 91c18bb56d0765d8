#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "copcp/catalog.hpp"
#include "copcp/pairwise.hpp"
#include "copcp/random.hpp"

using namespace copcp;

namespace {

bool verifies(const MatrixPair& p, const PairVerdict& v) {
  std::string why;
  const bool ok = verify_pair_certificate(p, v, &why);
  if (!ok) MESSAGE(v.cone << "/" << v.cert.kind << ": " << why);
  return ok;
}

Mat rows(const nlohmann::json& j) {
  Mat m(j.size(), j[0].size());
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) m(i, k) = j[i][k].get<double>();
  return m;
}

MatrixPair graph_pair(const Graph& g, double t) {
  const int n = g.n();
  return MatrixPair(Mat::Ones(n, n), HermMatrix(SymMatrix(Mat(Mat::Identity(n, n) - t * g.adjacency().mat()))));
}

}  // namespace

TEST_CASE("pair construction guards") {
  Mat A = Mat::Ones(2, 2);
  CMat B = CMat::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(MatrixPair(A, HermMatrix(B)), DiagonalMismatch);
  CHECK_THROWS_AS(MatrixPair(Mat::Ones(3, 3), HermMatrix(SymMatrix::ones(2))), DimensionMismatch);
  MatrixPair p(A, HermMatrix(SymMatrix::ones(2)));
  CHECK(p.A_symmetric());
  CHECK(p.B_real());
  CHECK(p.B_off()(0, 0) == cplx(0));
}

TEST_CASE("form value matches its definition") {
  Rng rng(41);
  const int n = 4;
  Mat A = rng.gaussian(n, n);
  CMat g = rng.complex_normal(n) * rng.complex_normal(n).adjoint();
  CMat B = 0.5 * (g + g.adjoint());
  for (int i = 0; i < n; ++i) B(i, i) = A(i, i);
  MatrixPair p(A, HermMatrix(B));
  CVec v = rng.complex_normal(n), w = rng.complex_normal(n);
  Vec a = v.cwiseAbs2(), b = w.cwiseAbs2();
  CVec vw = v.cwiseProduct(w);
  const double expect = a.dot(A * b) + (vw.adjoint() * p.B_off() * vw)(0).real();
  CHECK(copcp_form_value(p, v, w) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("PDEC shift agrees with the cvxpy oracle on complex pairs") {
  const auto& pairs = testdata::oracles()["pdec_pairs"];
  int compared = 0;
  for (const auto& e : pairs) {
    if (e["shift"].is_null()) continue;
    Mat A = rows(e["A"]);
    CMat B(A.rows(), A.cols());
    B.real() = rows(e["re"]);
    B.imag() = rows(e["im"]);
    MatrixPair p(A, HermMatrix(B));
    PairVerdict v = is_pdec(p);
    REQUIRE(v.route == "sdp");
    CHECK(v.cert.shift == doctest::Approx(e["shift"].get<double>()).epsilon(1e-6));
    CHECK(verifies(p, v));
    ++compared;
  }
  CHECK(compared >= 4);
}

TEST_CASE("Petersen graph pair: PDEC below sigma only") {
  const auto& o = testdata::oracles()["petersen_pdec_shift"];
  Graph g = catalog("petersen");
  for (double t : {1.6, 1.9}) {
    MatrixPair p = graph_pair(g, t);
    PairVerdict v = is_pdec(p);
    char key[8];
    std::snprintf(key, sizeof key, "%.1f", t);
    CHECK(v.cert.shift == doctest::Approx(o[key].get<double>()).epsilon(1e-6));
    CHECK(v.status == (t < 5.0 / 3 ? Verdict::Member : Verdict::NonMember));
    CHECK(verifies(p, v));
  }
}

TEST_CASE("trivial members and the hollow pairs") {
  MatrixPair jI(Mat::Ones(4, 4), HermMatrix(SymMatrix::identity(4)));
  CHECK(is_pdec(jI).status == Verdict::Member);
  CHECK(is_copcp(jI).status == Verdict::Member);
  CHECK(pcp_checks(jI).status == Verdict::Member);

  Rng rng(43);
  Mat N = rng.gaussian(5, 5).cwiseAbs();
  N = Mat(0.5 * (N + N.transpose()));
  N.diagonal().setZero();
  MatrixPair hollow(N, HermMatrix(SymMatrix(Mat(-N))));
  PairVerdict c = is_copcp(hollow);
  CHECK(c.status == Verdict::Member);
  CHECK(verifies(hollow, c));
  PairVerdict d = is_pdec(hollow);
  CHECK(d.status == Verdict::Member);
  CHECK(verifies(hollow, d));
}

TEST_CASE("negative entries of A refute every pairwise cone") {
  Mat A = Mat::Ones(3, 3);
  A(0, 2) = -0.5;
  MatrixPair p(A, HermMatrix(SymMatrix::ones(3)));
  for (const PairVerdict& v : {is_copcp(p), is_pdec(p), pcp_checks(p)}) {
    CHECK(v.status == Verdict::NonMember);
    CHECK(verifies(p, v));
  }
  FilterReport f = necessary_filters(p);
  CHECK(f.ewp == Check::Fail);
  CHECK(f.any_fail());
}

TEST_CASE("entry filter") {
  Mat A = Mat::Identity(2, 2);
  Mat B(2, 2);
  B << 1, 3, 3, 1;
  MatrixPair p(A, HermMatrix(SymMatrix(B)));
  FilterReport f = necessary_filters(p);
  CHECK(f.entry == Check::Fail);
  CHECK(f.entry_violation.first >= 0);
  PairVerdict v = is_copcp(p);
  CHECK(v.status == Verdict::NonMember);
  CHECK(verifies(p, v));
}

TEST_CASE("lifting a copositive matrix") {
  SymMatrix H = horn();
  SymMatrix N(Mat(H.mat().cwiseMax(0.0)));
  PairVerdict v = lift_check(H, N);
  CHECK(v.status == Verdict::Member);
  MatrixPair p(N.mat(), HermMatrix(SymMatrix(Mat(H.mat() - off_diag(N).mat()))));
  CHECK(verifies(p, v));
  CHECK_THROWS_AS(lift_check(H, SymMatrix::ones(5) * 2.0), PreconditionError);
}

TEST_CASE("chain consistency on a few random pairs") {
  Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    const int n = 4;
    Mat A = rng.gaussian(n, n).cwiseAbs();
    CMat B = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        B(i, j) = cplx(rng.normal(), rng.normal()) * 0.6;
        B(j, i) = std::conj(B(i, j));
      }
    for (int i = 0; i < n; ++i) {
      A(i, i) = 1.0;
      B(i, i) = 1.0;
    }
    MatrixPair p(A, HermMatrix(B));
    PairVerdict pd = is_pdec(p), cc = is_copcp(p);
    if (pd.status == Verdict::Member) CHECK(cc.status == Verdict::Member);
    if (cc.status == Verdict::NonMember) CHECK(pd.status == Verdict::NonMember);
    if (is_cldui_plus(p)) CHECK(pd.status == Verdict::Member);
    CHECK(verifies(p, pd));
    if (cc.status != Verdict::Unknown) CHECK(verifies(p, cc));
  }
}

TEST_CASE("tampered pair certificates are rejected") {
  MatrixPair p = graph_pair(catalog("petersen"), 1.6);
  PairVerdict v = is_pdec(p);
  REQUIRE(v.status == Verdict::Member);
  v.cert.shift += 1.0;
  CHECK_FALSE(verify_pair_certificate(p, v));
}
