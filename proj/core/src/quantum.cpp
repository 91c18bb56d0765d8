#include "copcp/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "copcp/random.hpp"

namespace copcp {

const char* to_string(ChoiKind k) { return k == ChoiKind::Ldui ? "LDUI" : "CLDUI"; }

ChoiMatrix choi(const MatrixPair& p, ChoiKind kind) {
  const int n = p.n();
  ChoiMatrix c;
  c.n = n;
  c.kind = kind;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(2 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (p.A()(i, j) != 0.0) trip.emplace_back(i * n + j, i * n + j, p.A()(i, j));
      if (i == j || p.B()(i, j) == cplx(0.0)) continue;
      if (kind == ChoiKind::Ldui)
        trip.emplace_back(i * n + j, j * n + i, p.B()(i, j));
      else
        trip.emplace_back(i * n + i, j * n + j, p.B()(i, j));
    }
  c.X.resize(n * n, n * n);
  c.X.setFromTriplets(trip.begin(), trip.end());
  return c;
}

HermMatrix apply_map(const MatrixPair& p, MapKind kind, const HermMatrix& Z) {
  const int n = p.n();
  if (Z.n() != n) throw DimensionMismatch("apply_map: input has the wrong dimension");
  const CMat Bo = p.B_off();
  CMat out = kind == MapKind::Duc ? CMat(Bo.cwiseProduct(Z.mat())) : CMat(Bo.cwiseProduct(Z.mat().transpose()));
  const Vec d = p.A() * Z.diag();
  for (int i = 0; i < n; ++i) out(i, i) += d(i);
  return HermMatrix(out);
}

MatrixPair twirl_ldui(const CMat& X) {
  const int N = static_cast<int>(X.rows());
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(N))));
  if (X.cols() != N || n * n != N) throw DimensionMismatch("twirl_ldui: expected an n^2 x n^2 operator");
  Mat A(n, n);
  CMat B = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = X(i * n + j, i * n + j).real();
  for (int i = 0; i < n; ++i) {
    B(i, i) = A(i, i);
    for (int j = i + 1; j < n; ++j) {
      // average with the mirrored slot so a slightly non-Hermitian input still projects cleanly
      cplx b = 0.5 * (X(i * n + j, j * n + i) + std::conj(X(j * n + i, i * n + j)));
      B(i, j) = b;
      B(j, i) = std::conj(b);
    }
  }
  return MatrixPair(A, HermMatrix(B));
}

double choi_expectation(const ChoiMatrix& c, const CVec& v, const CVec& w) {
  const int n = c.n;
  if (v.size() != n || w.size() != n) throw DimensionMismatch("choi_expectation: vector length");
  CVec x(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i * n + j) = v(i) * w(j);
  return x.dot(c.X * x).real();
}

double block_positivity_value(const MatrixPair& p, ChoiKind kind, const CVec& v, const CVec& w) {
  const int n = p.n();
  if (v.size() != n || w.size() != n) throw DimensionMismatch("block_positivity_value: vector length");
  const Vec a = v.cwiseAbs2(), b = w.cwiseAbs2();
  const CVec z = kind == ChoiKind::Ldui ? CVec(v.cwiseProduct(w.conjugate())) : CVec(v.cwiseProduct(w));
  const double closed = a.dot(p.A() * b) + z.dot(p.B_off() * z).real();
  const double explicit_value = choi_expectation(choi(p, kind), v, w);
  const double scale = (p.A().cwiseAbs().maxCoeff() + p.B().mat().cwiseAbs().maxCoeff()) * a.sum() * b.sum();
  if (std::abs(closed - explicit_value) > 1e-10 * std::max(1.0, scale))
    throw NumericalBreakdown("closed form and Choi expectation disagree");
  return closed;
}

// ---------------------------------------------------------------------------

double markov_choi_g(const Mat& A, const Vec& t) {
  const Vec u = A * t;
  double g = 0;
  for (int i = 0; i < t.size(); ++i)
    if (t(i) > 0) g += t(i) / (t(i) + u(i));
  return g;
}

namespace {

Vec markov_choi_grad(const Mat& A, const Vec& t) {
  const int n = static_cast<int>(t.size());
  const Vec u = A * t;
  Vec grad = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double d = t(i) + u(i);
    if (d <= 1e-300) continue;
    const double d2 = d * d;
    grad(i) += u(i) / d2;
    grad -= (t(i) / d2) * A.row(i).transpose();
  }
  return grad;
}

Vec ascend(const Mat& A, Vec t, int iters) {
  double g = markov_choi_g(A, t);
  double eta = 0.5;
  for (int it = 0; it < iters && eta > 1e-14; ++it) {
    const Vec grad = markov_choi_grad(A, t);
    bool moved = false;
    while (eta > 1e-14) {
      Vec cand = project_simplex(t + eta * grad);
      double gc = markov_choi_g(A, cand);
      if (gc > g + 1e-15) {
        moved = true;
        const bool tiny = gc - g < 1e-14;
        t = std::move(cand);
        g = gc;
        eta *= 2.0;
        if (tiny) it = iters;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) break;
  }
  return t;
}

MatrixPair markov_pair(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  CMat B = -CMat::Ones(n, n);
  for (int i = 0; i < n; ++i) B(i, i) = A(i, i);
  return MatrixPair(A, HermMatrix(B));
}

}  // namespace

MarkovChoiReport markov_choi_check(const Mat& A, const Tolerance& tol, Effort effort, std::uint64_t seed) {
  if (A.rows() != A.cols() || A.rows() < 1) throw DimensionMismatch("markov_choi_check: A must be square");
  if (!A.allFinite() || A.minCoeff() < 0) throw PreconditionError("markov_choi_check: A must be entrywise non-negative");
  const int n = static_cast<int>(A.rows());
  MarkovChoiReport rep;
  const MatrixPair p = markov_pair(A);

  double s = 0;
  for (int i = 0; i < n; ++i) s += 1.0 / (1.0 + A(i, i));
  rep.cldui_plus = s <= 1.0 + 1e-12;
  rep.pdnn = rep.cldui_plus;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (A(i, j) * A(j, i) < 1.0 - 1e-12) rep.pdnn = false;

  // analytic sweep: vertices and the uniform point, then projected-gradient ascent
  std::vector<Vec> starts;
  for (int i = 0; i < n; ++i) starts.push_back(Vec::Unit(n, i));
  starts.push_back(Vec::Constant(n, 1.0 / n));
  Vec best = starts.back();
  double gbest = markov_choi_g(A, best);
  for (const Vec& t : starts) {
    double g = markov_choi_g(A, t);
    if (g > gbest) gbest = g, best = t;
  }
  const int multistarts = effort == Effort::Fast ? 16 : effort == Effort::Thorough ? 256 : 64;
  Rng rng(seed);
  for (int k = 0; k < multistarts; ++k) {
    Vec t0 = k == 0 ? Vec(Vec::Constant(n, 1.0 / n)) : rng.dirichlet(n);
    Vec t = ascend(A, t0, 400);
    double g = markov_choi_g(A, t);
    if (g > gbest) gbest = g, best = t;
  }
  rep.g_max = gbest;
  rep.t = best;

  PairVerdict& v = rep.verdict;
  v.cone = "copcp";
  v.tol = tol;
  if (gbest > 1.0 + tol.feas_tol) {
    // w = sqrt(t), |v_i|^2 proportional to t_i / (t_i + (At)_i)^2 saturates Cauchy-Schwarz
    const Vec u = A * best;
    CVec vv(n), ww(n);
    for (int i = 0; i < n; ++i) {
      ww(i) = std::sqrt(best(i));
      const double d = best(i) + u(i);
      vv(i) = d > 0 ? std::sqrt(best(i)) / d : 0.0;
    }
    vv.normalize();
    ww.normalize();
    v.cert.kind = "refuting-vectors";
    v.cert.v = vv;
    v.cert.w = ww;
    v.cert.value = copcp_form_value(p, vv, ww);
    v.cert.weights = best;
    v.cert.note = "violating t with g(t) = " + std::to_string(gbest);
    v.route = "markov-choi";
    v.status = v.cert.value < -tol.feas_tol ? Verdict::NonMember : Verdict::Unknown;
    return rep;
  }
  PairVerdict full = is_copcp(p, tol, effort, seed);
  if (full.status != Verdict::Unknown) {
    rep.verdict = full;
    return rep;
  }
  v.status = Verdict::Member;
  v.route = "markov-choi";
  v.cert.kind = "markov-choi";
  v.cert.weights = best;
  v.cert.value = gbest;
  v.cert.note = "heuristic maximum of g over the simplex";
  return rep;
}

// ---------------------------------------------------------------------------

DickeState dicke(const SymMatrix& P) {
  DickeState d{P, {}};
  d.X = choi(pair_form(P, P), ChoiKind::Ldui);
  return d;
}

DickeClass dicke_class(const SymMatrix& P, const Tolerance& tol, Effort effort, std::uint64_t seed) {
  DickeClass c;
  c.psd = is_ewp(P.mat(), tol.feas_tol);
  c.ppt = is_dnn(P, tol).status == Verdict::Member;
  c.separable = is_cp(P, tol, effort, seed);
  if (c.separable.status == Verdict::NonMember && c.separable.cert.witness.size() > 0)
    c.witness_value = inner(SymMatrix(c.separable.cert.witness), P);
  return c;
}

ConeVerdict dicke_extendibility(const SymMatrix& P, int r, const Tolerance& tol) {
  if (r < 2 || r > 4) throw UnsupportedLevel("dicke_extendibility supports r in {2,3,4}");
  return in_kr_dual(P, r - 2, tol);
}

double Witness::evaluate(const SymMatrix& P) const {
  if (P.n() != M.n()) throw DimensionMismatch("witness: state has the wrong dimension");
  return inner(P, M);
}

Witness witness_from_cop(const SymMatrix& M, const SymMatrix& N, int cone_level, const Tolerance& tol, Effort effort,
                         std::uint64_t seed) {
  if (M.n() != N.n()) throw DimensionMismatch("witness: M and N differ in size");
  if (cone_level < -1 || cone_level > 2) throw UnsupportedLevel("witness level must be -1 (COP) or 0..2");
  const double scale = std::max(1.0, M.diag().cwiseAbs().maxCoeff());
  if ((M.diag() - N.diag()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw DiagonalMismatch("witness: diag(N) != diag(M)");
  Witness w;
  w.M = M;
  w.N = N;
  w.cone_level = cone_level;
  w.level = cone_level < 0 ? -1 : cone_level + 2;
  w.membership = cone_level < 0 ? is_cop(M, tol, effort, seed) : is_kr(M, cone_level, tol);
  if (w.membership.status == Verdict::Unknown) throw LevelNotCertified("witness: membership of M could not be certified");
  if (w.membership.status == Verdict::NonMember) throw PreconditionError("witness: M is not in the declared cone");
  w.pair = MatrixPair(N.mat(), HermMatrix(M - off_diag(N)));
  w.X = choi(w.pair, ChoiKind::Ldui);
  return w;
}

ExtendibleEntangled find_extendible_entangled(int n, int r, const Tolerance& tol) {
  if (n < 5) throw PreconditionError("no extendible entangled Dicke state exists for n <= 4 (DNN = CP)");
  if (r < 2 || r > 4) throw UnsupportedLevel("find_extendible_entangled supports r in {2,3,4}");
  Mat XB = Mat::Identity(n, n);
  XB.topLeftCorner(5, 5) = berman_dnn().mat();
  const Mat C = Mat::Identity(n, n) + Mat::Ones(n, n);
  auto at = [&](double s) { return SymMatrix(Mat((1.0 - s) * C + s * XB)); };
  auto member = [&](double s) { return in_kr_dual(at(s), r - 2, tol).status == Verdict::Member; };

  double lo = 0.0, hi = 1.0;
  if (member(1.0)) {
    lo = 1.0;
  } else {
    if (!member(0.0)) throw SearchFailed("interior point is not certified extendible");
    for (int it = 0; it < 24; ++it) {
      double mid = 0.5 * (lo + hi);
      (member(mid) ? lo : hi) = mid;
    }
  }

  ExtendibleEntangled out;
  // step back until both certificates hold
  for (double back : {0.0, 1e-6, 1e-5, 1e-4}) {
    const double s = std::max(0.0, lo - back);
    SymMatrix P = at(s);
    ConeVerdict ext = in_kr_dual(P, r - 2, tol);
    if (ext.status != Verdict::Member || !verify_certificate(P, ext)) continue;
    ConeVerdict cp = is_cp(P, tol);
    if (cp.status != Verdict::NonMember || cp.cert.witness.size() == 0 || !verify_certificate(P, cp)) continue;
    const double val = inner(SymMatrix(cp.cert.witness), P);
    if (val >= -tol.feas_tol) continue;
    out.P = P;
    out.s = s;
    out.extendible = ext;
    out.W = cp.cert.witness;
    out.witness_value = val;
    out.separable = std::move(cp);
    return out;
  }
  throw SearchFailed("no mixing weight satisfied both certificates");
}

StarCheck ext_necessary_star(const MatrixPair& p, int r, const Tolerance& tol) {
  if (r < 1 || r > 3) throw UnsupportedLevel("ext_necessary_star supports r in {1,2,3}");
  StarCheck c;
  c.base = is_kr(symmetric_part(p), r - 1, tol);
  c.status = c.base.status == Verdict::Member ? Check::Pass : c.base.status == Verdict::NonMember ? Check::Fail : Check::Unknown;
  return c;
}

}  // namespace copcp
