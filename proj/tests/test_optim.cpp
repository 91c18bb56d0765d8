#include <cmath>
#include <sstream>

#include "doctest.h"

#include "copcp/optim.hpp"
#include "copcp/random.hpp"

using namespace copcp;
using namespace copcp::optim;

namespace {

// min <M, X> s.t. tr X = 1, X PSD  ->  lambda_min(M)
SdpProblem min_eig_problem(const Mat& M) {
  SdpProblem p;
  const int n = static_cast<int>(M.rows());
  const int b = p.add_block(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (M(i, j) != 0) p.objective.sym(b, i, j, M(i, j));
  Row tr;
  for (int i = 0; i < n; ++i) tr.elem(b, i, i, 1.0);
  p.add_constraint(tr, 1.0);
  return p;
}

}  // namespace

TEST_CASE("max t with I - tJ PSD is 1/n") {
  SdpProblem p;
  p.sense = Sense::Maximize;
  const int b = p.add_block(3);
  const int t = p.add_free(1);
  p.objective.var(t, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Row r;
      r.elem(b, i, j, 1.0).var(t, 1.0);
      p.add_constraint(r, i == j ? 1.0 : 0.0);
    }
  SdpSolution s = solve_sdp(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.primal_objective == doctest::Approx(1.0 / 3).epsilon(1e-8));
  CHECK(s.dual_objective == doctest::Approx(1.0 / 3).epsilon(1e-8));
  CHECK(verify_solution(p, s, {}));
}

TEST_CASE("minimum eigenvalue problems hit the spectrum") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 6;
    Mat g = rng.gaussian(n, n);
    Mat M = 0.5 * (g + g.transpose());
    SdpProblem p = min_eig_problem(M);
    SdpSolution s = solve_sdp(p);
    REQUIRE(s.status == Status::Optimal);
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    CHECK(std::abs(s.primal_objective - es.eigenvalues()(0)) < 1e-7);
    std::string why;
    CHECK_MESSAGE(verify_solution(p, s, {}, nullptr, &why), why);
    // the dual slack is PSD and complementary to X
    CHECK(std::abs((s.X[0] * s.Z[0]).trace()) < 1e-6);
  }
}

TEST_CASE("infeasible and unbounded problems are classified") {
  SdpProblem inf;
  const int b = inf.add_block(1);
  inf.objective.elem(b, 0, 0, 1.0);
  Row r;
  r.elem(b, 0, 0, 1.0);
  inf.add_constraint(r, -1.0);
  SdpSolution s = solve_sdp(inf);
  CHECK(s.status == Status::Infeasible);
  CHECK(verify_solution(inf, s, {}));

  SdpProblem unb;
  const int x = unb.add_lp(1);
  const int y = unb.add_free(1);
  unb.objective.lin(x, -1.0);
  Row q;
  q.lin(x, 1.0).var(y, -1.0);
  unb.add_constraint(q, 0.0);
  CHECK(solve_sdp(unb).status == Status::DualInfeasible);
}

TEST_CASE("problem validation") {
  SdpProblem p;
  p.add_block(2);
  Row r;
  r.elem(3, 0, 0, 1.0);
  p.add_constraint(r, 1.0);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  SdpProblem q;
  const int b = q.add_block(2);
  Row bad;
  bad.elem(b, 0, 5, 1.0);
  q.add_constraint(bad, 1.0);
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  CHECK_THROWS_AS(SdpProblem().add_block(0), std::invalid_argument);
}

TEST_CASE("sparse SDPA dump lists dimensions and entries") {
  SdpProblem p = min_eig_problem(Mat::Identity(2, 2));
  std::ostringstream os;
  dump_sdpa(p, os);
  const std::string s = os.str();
  CHECK(s.find("sense min\n") != std::string::npos);
  CHECK(s.find("blocks 1 2\n") != std::string::npos);
  CHECK(s.find("constraints 1\n") != std::string::npos);
  CHECK(s.find("rhs 0 1\n") != std::string::npos);
  CHECK(s.find("con 0 psd 0 1 1 1\n") != std::string::npos);
}

TEST_CASE("linear programs") {
  Vec c(1);
  c << 1;
  Mat A(0, 1);
  Vec b(0);
  LpResult r = solve_lp(c, A, b, {Bound{-INFINITY, 3}}, Sense::Maximize);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(3.0));

  // min x + 2y  s.t. x + y = 1, x, y >= 0
  Vec c2(2);
  c2 << 1, 2;
  Mat A2(1, 2);
  A2 << 1, 1;
  Vec b2(1);
  b2 << 1;
  LpResult r2 = solve_lp(c2, A2, b2, {Bound{}, Bound{}});
  REQUIRE(r2.status == LpStatus::Optimal);
  CHECK(r2.objective == doctest::Approx(1.0));
  CHECK(r2.x(0) == doctest::Approx(1.0));

  // x + y = -1 with x, y >= 0
  Vec b3(1);
  b3 << -1;
  CHECK(solve_lp(c2, A2, b3, {Bound{}, Bound{}}).status == LpStatus::Infeasible);
  CHECK_THROWS_AS(solve_lp(c2, Mat(1, 3), b2, {Bound{}, Bound{}}), DimensionMismatch);
}
