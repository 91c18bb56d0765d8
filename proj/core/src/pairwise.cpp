#include "copcp/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "copcp/optim.hpp"
#include "copcp/random.hpp"

namespace copcp {

using optim::Row;
using optim::SdpProblem;

namespace {

double scale_of(const Mat& M) { return std::max(1.0, M.cwiseAbs().maxCoeff()); }

bool fail(std::string* why, const std::string& w) {
  if (why) *why = w;
  return false;
}

PairVerdict make(const std::string& cone, const Tolerance& tol) {
  PairVerdict v;
  v.cone = cone;
  v.tol = tol;
  return v;
}

bool diag_match(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a(i) - b(i)) > 1e-12 * std::max(1.0, std::abs(a(i)))) return false;
  return true;
}

// first (i, j) with A_ij < -tol, or (-1, -1)
std::pair<int, int> negative_entry(const Mat& A, double tol) {
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (A(i, j) < -tol) return {i, j};
  return {-1, -1};
}

CVec unit(int n, int i) {
  CVec e = CVec::Zero(n);
  e(i) = 1.0;
  return e;
}

void set_refuting(PairVerdict& v, const MatrixPair& p, CVec a, CVec b, const std::string& note) {
  v.status = Verdict::NonMember;
  v.cert.kind = "refuting-vectors";
  v.cert.value = copcp_form_value(p, a, b);
  v.cert.v = std::move(a);
  v.cert.w = std::move(b);
  v.cert.note = note;
}

CVec sqrt_vec(const Vec& p) {
  CVec s(p.size());
  for (int i = 0; i < p.size(); ++i) s(i) = std::sqrt(std::max(0.0, p(i)));
  return s;
}

Mat rho_matrix(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  Mat R = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) R(i, j) = std::sqrt(std::max(0.0, A(i, j) * A(j, i)));
  return R;
}

}  // namespace

// ---------------------------------------------------------------------------

MatrixPair::MatrixPair(Mat A, HermMatrix B) : A_(std::move(A)), B_(std::move(B)) {
  if (A_.rows() != A_.cols() || A_.rows() != B_.n() || A_.rows() < 1) throw DimensionMismatch("pair dimensions");
  if (!A_.allFinite() || !B_.mat().allFinite()) throw std::invalid_argument("pair has non-finite entries");
  if (!diag_match(A_.diagonal(), B_.diag())) throw DiagonalMismatch("diag(A) != diag(B)");
}

CMat MatrixPair::B_off() const {
  CMat b = B_.mat();
  b.diagonal().setZero();
  return b;
}

bool MatrixPair::A_symmetric(double tol) const { return (A_ - A_.transpose()).cwiseAbs().maxCoeff() <= tol; }

MatrixPair pair_form(const Mat& A, const HermMatrix& B) { return MatrixPair(A, B); }
MatrixPair pair_form(const SymMatrix& A, const SymMatrix& B) { return MatrixPair(A.mat(), HermMatrix(B)); }

double copcp_form_value(const MatrixPair& p, const CVec& v, const CVec& w) {
  if (v.size() != p.n() || w.size() != p.n()) throw DimensionMismatch("form vectors");
  Vec a = v.cwiseAbs2();
  Vec b = w.cwiseAbs2();
  CVec z = v.cwiseProduct(w);
  cplx q = z.dot(p.B_off() * z);  // conjugates z
  return a.dot(p.A() * b) + q.real();
}

const char* to_string(Check c) {
  switch (c) {
    case Check::Pass: return "PASS";
    case Check::Fail: return "FAIL";
    default: return "UNKNOWN";
  }
}

SymMatrix symmetric_part(const MatrixPair& p) {
  return SymMatrix(Mat(p.A() + p.A().transpose() + 2.0 * p.B_off().real()));
}

double pair_inner(const MatrixPair& p, const MatrixPair& q) {
  if (p.n() != q.n()) throw DimensionMismatch("pair inner");
  return p.A().cwiseProduct(q.A()).sum() + p.B_off().conjugate().cwiseProduct(q.B_off()).sum().real();
}

// ---------------------------------------------------------------------------

FilterReport necessary_filters(const MatrixPair& p, const Tolerance& tol, Effort effort, std::uint64_t seed) {
  FilterReport f;
  const Mat& A = p.A();
  const int n = p.n();
  f.ewp = is_ewp(A, tol.feas_tol) ? Check::Pass : Check::Fail;
  f.cop = is_cop(symmetric_part(p), tol, effort, seed);
  f.sym_cop = f.cop.status == Verdict::Member ? Check::Pass
              : f.cop.status == Verdict::NonMember ? Check::Fail : Check::Unknown;
  f.entry = Check::Pass;
  for (int i = 0; i < n && f.entry == Check::Pass; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double lhs = std::sqrt(std::max(0.0, A(i, i) * A(j, j))) + std::sqrt(std::max(0.0, A(i, j) * A(j, i))) -
                   std::abs(p.B()(i, j));
      if (lhs < -tol.feas_tol) {
        f.entry = Check::Fail;
        f.entry_violation = {i, j};
        break;
      }
    }
  return f;
}

bool is_cldui_plus(const MatrixPair& p, const Tolerance& tol) {
  return is_ewp(p.A(), tol.feas_tol) && is_psd(p.B(), tol);
}

bool is_pdnn(const MatrixPair& p, const Tolerance& tol) {
  if (!is_cldui_plus(p, tol)) return false;
  const Mat& A = p.A();
  for (int i = 0; i < p.n(); ++i)
    for (int j = i + 1; j < p.n(); ++j)
      if (A(i, j) * A(j, i) - std::norm(p.B()(i, j)) < -tol.feas_tol) return false;
  return true;
}

bool pdec_sufficient(const MatrixPair& p) {
  const Mat& A = p.A();
  const int n = p.n();
  if (A.minCoeff() < 0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double lhs = std::sqrt(A(i, i) * A(j, j)) / (n - 1) + std::sqrt(A(i, j) * A(j, i)) - std::abs(p.B()(i, j));
      if (lhs < -1e-12 * std::max(1.0, std::abs(p.B()(i, j)))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// PDEC: max s such that B - s I = B1 + B2, B1 PSD, diag(B2) >= 0, |B2_ij| <= sqrt(A_ij A_ji)

PairVerdict is_pdec(const MatrixPair& p, const Tolerance& tol) {
  PairVerdict v = make("pdec", tol);
  const int n = p.n();
  const Mat& A = p.A();
  auto [ni, nj] = negative_entry(A, tol.feas_tol);
  if (ni >= 0) {
    v.route = "ewp";
    set_refuting(v, p, unit(n, ni), unit(n, nj), "negative entry of A");
    return v;
  }
  const bool cplx_B = !p.B_real(0.0);
  const Mat rho = rho_matrix(A);
  const CMat& B = p.B().mat();

  SdpProblem sp;
  sp.sense = optim::Sense::Maximize;
  const int b1 = sp.add_block(cplx_B ? 2 * n : n);
  const int d0 = sp.add_lp(n);
  const int s = sp.add_free(1);
  sp.objective.var(s, 1.0);
  struct Arrow {
    int i, j, block;
  };
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rho(i, j) > 0) arrows.push_back({i, j, sp.add_block(cplx_B ? 3 : 2)});

  auto re_b1 = [&](Row& r, int i, int j) {
    if (cplx_B) {
      r.elem(b1, i, j, 0.5).elem(b1, n + i, n + j, 0.5);
    } else {
      r.elem(b1, i, j, 1.0);
    }
  };
  for (int i = 0; i < n; ++i) {
    Row r;
    re_b1(r, i, i);
    r.lin(d0 + i, 1.0).var(s, 1.0);
    sp.add_constraint(std::move(r), B(i, i).real());
  }
  auto arrow_of = [&](int i, int j) -> const Arrow* {
    for (const Arrow& a : arrows)
      if (a.i == i && a.j == j) return &a;
    return nullptr;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Arrow* ar = arrow_of(i, j);
      Row r;
      re_b1(r, i, j);
      if (ar) r.elem(ar->block, 0, 1, 1.0);
      sp.add_constraint(std::move(r), B(i, j).real());
      if (cplx_B) {
        // Im(B1)_ij from the realified block [[R, -S], [S, R]]
        Row q;
        q.elem(b1, n + i, j, 0.5).elem(b1, i, n + j, -0.5);
        if (ar) q.elem(ar->block, 0, 2, 1.0);
        sp.add_constraint(std::move(q), B(i, j).imag());
      }
    }
  for (const Arrow& a : arrows) {
    const int m = cplx_B ? 3 : 2;
    for (int k = 0; k < m; ++k) {
      Row r;
      r.elem(a.block, k, k, 1.0);
      sp.add_constraint(std::move(r), rho(a.i, a.j));
    }
    if (cplx_B) {
      Row r;
      r.elem(a.block, 1, 2, 1.0);
      sp.add_constraint(std::move(r), 0.0);
    }
  }

  optim::SdpSolution sol = optim::solve_sdp(sp, tol);
  if (sol.status != optim::Status::Optimal) {
    v.route = std::string("solver ") + optim::to_string(sol.status);
    return v;
  }
  v.route = "sdp";
  const double shift = sol.primal_objective;
  if (shift >= -tol.feas_tol) {
    const Mat& Xb = sol.X[b1];
    CMat B1(n, n);
    if (cplx_B) {
      B1.real() = 0.5 * (Xb.topLeftCorner(n, n) + Xb.bottomRightCorner(n, n));
      B1.imag() = 0.5 * (Xb.bottomLeftCorner(n, n) - Xb.topRightCorner(n, n));
    } else {
      B1.real() = Xb;
      B1.imag().setZero();
    }
    CMat B2 = B - B1 - cplx(shift) * CMat::Identity(n, n);
    v.status = Verdict::Member;
    v.cert.kind = "pdec";
    v.cert.B1 = HermMatrix(B1);
    v.cert.B2 = HermMatrix(B2);
    v.cert.shift = shift;
    v.cert.value = shift;
    return v;
  }
  const Mat& Zb = sol.Z[b1];
  CMat Y(n, n);
  if (cplx_B) {
    Y.real() = 0.5 * (Zb.topLeftCorner(n, n) + Zb.bottomRightCorner(n, n));
    Y.imag() = 0.5 * (Zb.bottomLeftCorner(n, n) - Zb.topRightCorner(n, n));
  } else {
    Y.real() = Zb;
    Y.imag().setZero();
  }
  Y /= Y.trace().real();
  v.status = Verdict::NonMember;
  v.cert.kind = "pdec-dual";
  v.cert.Y = Y;
  v.cert.value = Y.conjugate().cwiseProduct(B).sum().real() + rho.cwiseProduct(Y.cwiseAbs()).sum();
  v.cert.shift = shift;
  return v;
}

// ---------------------------------------------------------------------------

PairRefutation copcp_refute(const MatrixPair& p, int multistarts, std::uint64_t seed) {
  const int n = p.n();
  const Mat& A = p.A();
  const CMat Bo = p.B_off();
  PairRefutation best;
  best.value = std::numeric_limits<double>::infinity();
  constexpr double pi = std::numbers::pi;

  auto value = [&](const Vec& a, const Vec& b, const Vec& th, Mat& R) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) R(i, j) = (Bo(i, j) * std::polar(1.0, th(j) - th(i))).real();
    Vec c = a.cwiseProduct(b);
    return a.cwiseAbs2().dot(A * b.cwiseAbs2()) + c.dot(R * c);
  };
  auto min_vec = [&](const Mat& Q) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (Q + Q.transpose()));
    return Vec(es.eigenvectors().col(0));
  };

  for (int start = 0; start < std::max(1, multistarts); ++start) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(start));
    Vec a(n), b(n), th(n);
    if (start == 0) {
      a.setConstant(1.0);
      b.setConstant(1.0);
      th.setZero();
    } else {
      for (int i = 0; i < n; ++i) {
        a(i) = std::abs(rng.normal());
        b(i) = std::abs(rng.normal());
        th(i) = rng.uniform(0.0, 2 * pi);
      }
    }
    a.normalize();
    b.normalize();
    Mat R(n, n);
    double f = value(a, b, th, R);
    for (int it = 0; it < 300; ++it) {
      const double f0 = f;
      // magnitudes of v; signs fold into the phases
      Vec bb = b.cwiseAbs2();
      Mat Q = Mat((A * bb).asDiagonal()) + R.cwiseProduct(b * b.transpose());
      a = min_vec(Q);
      for (int k = 0; k < n; ++k)
        if (a(k) < 0) {
          a(k) = -a(k);
          th(k) += pi;
        }
      value(a, b, th, R);
      Vec aa = a.cwiseAbs2();
      Q = Mat((A.transpose() * aa).asDiagonal()) + R.cwiseProduct(a * a.transpose());
      b = min_vec(Q);
      for (int k = 0; k < n; ++k)
        if (b(k) < 0) {
          b(k) = -b(k);
          th(k) += pi;
        }
      // phases, one coordinate at a time
      Vec c = a.cwiseProduct(b);
      for (int sweep = 0; sweep < 3; ++sweep)
        for (int k = 0; k < n; ++k) {
          cplx S = 0;
          for (int i = 0; i < n; ++i)
            if (i != k) S += Bo(i, k) * c(i) * std::polar(1.0, -th(i));
          S *= c(k);
          if (std::abs(S) > 1e-300) th(k) = pi - std::arg(S);
        }
      f = value(a, b, th, R);
      if (f0 - f < 1e-14 * std::max(1.0, std::abs(f))) break;
    }
    if (f < best.value) {
      best.value = f;
      best.v = CVec(n);
      for (int k = 0; k < n; ++k) best.v(k) = std::polar(a(k), th(k));
      best.w = b.cast<cplx>();
    }
  }
  best.value = copcp_form_value(p, best.v, best.w);
  best.found = best.value < 0;
  return best;
}

// ---------------------------------------------------------------------------

PairVerdict lift_check(const SymMatrix& A, const SymMatrix& N, const Tolerance& tol, Effort effort,
                       std::uint64_t seed) {
  if (A.n() != N.n()) throw DimensionMismatch("lift_check sizes");
  if (!diag_match(A.diag(), N.diag())) throw PreconditionError("lift_check: diag(N) != diag(A)");
  if (!is_ewp(N.mat(), tol.feas_tol)) throw PreconditionError("lift_check: N is not entrywise non-negative");
  if (!is_ewp((N - A).mat(), tol.feas_tol)) throw PreconditionError("lift_check: N - A is not entrywise non-negative");
  MatrixPair p(N.mat(), HermMatrix(A - off_diag(N)));
  PairVerdict v = make("copcp", tol);
  v.route = "lifting";
  ConeVerdict cop = is_cop(A, tol, effort, seed);
  v.cert.N = N;
  if (cop.status == Verdict::Member) {
    v.status = Verdict::Member;
    v.cert.kind = "lifting";
  } else if (cop.status == Verdict::NonMember) {
    CVec s = sqrt_vec(cop.cert.vector);
    set_refuting(v, p, s, s, "lifted from a copositivity violation");
  }
  v.cert.base = std::move(cop);
  return v;
}

PairVerdict spn_lift_check(const SymMatrix& A, const SymMatrix& N, const Tolerance& tol) {
  const int n = A.n();
  if (N.n() != n) throw DimensionMismatch("spn_lift_check sizes");
  if (!diag_match(A.diag(), N.diag())) throw PreconditionError("spn_lift_check: diag(N) != diag(A)");
  if (!is_ewp(N.mat(), tol.feas_tol)) throw PreconditionError("spn_lift_check: N is not entrywise non-negative");
  const Mat& Am = A.mat();
  const Mat& Nm = N.mat();
  bool general = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && Nm(i, j) < 0.5 * Am(i, j) + 0.25 * (Am(i, i) + Am(j, j)) - tol.feas_tol) general = false;
  const bool psd = is_psd(A, tol);
  const bool ewp_case = is_ewp(Am, tol.feas_tol) && is_ewp(Mat(Nm - 0.5 * Am), tol.feas_tol);
  if (!general && !psd && !ewp_case) throw PreconditionError("spn_lift_check: hypotheses on N fail");

  PairVerdict v = make("pdec", tol);
  v.cert.N = N;
  const Mat No = off_diag(Nm);
  auto member = [&](const Mat& A1, const Mat& A2, double shift) {
    // (N, A - N_off) = (diag A1, A1) + (diag A2 + N_off, A2 - N_off) [+ shift I]
    v.status = Verdict::Member;
    v.cert.kind = "pdec";
    v.cert.B1 = HermMatrix(CMat(A1.cast<cplx>()));
    v.cert.B2 = HermMatrix(CMat((A2 - No).cast<cplx>()));
    v.cert.shift = shift;
  };
  if (psd) {
    v.route = "psd";
    member(Am, Mat::Zero(n, n), 0.0);
    return v;
  }
  if (ewp_case) {
    v.route = "ewp";
    member(Mat::Zero(n, n), Am, 0.0);
    return v;
  }
  v.route = "spn";
  ConeVerdict spn = is_spn(A, tol);
  if (spn.status == Verdict::Member) {
    member(spn.cert.parts[0], spn.cert.parts[1], spn.cert.value);
  } else if (spn.status == Verdict::NonMember) {
    v.status = Verdict::NonMember;
    v.cert.kind = "dnn-witness";
    v.cert.W = spn.cert.witness;
    v.cert.value = 2.0 * Am.cwiseProduct(spn.cert.witness).sum();
  }
  v.cert.base = std::move(spn);
  return v;
}

// ---------------------------------------------------------------------------

PairVerdict is_copcp(const MatrixPair& p, const Tolerance& tol, Effort effort, std::uint64_t seed) {
  PairVerdict v = make("copcp", tol);
  const int n = p.n();
  const Mat& A = p.A();
  auto [ni, nj] = negative_entry(A, tol.feas_tol);
  if (ni >= 0) {
    v.route = "ewp";
    set_refuting(v, p, unit(n, ni), unit(n, nj), "negative entry of A");
    return v;
  }
  if (is_cldui_plus(p, tol)) {
    v.status = Verdict::Member;
    v.route = "cldui+";
    v.cert.kind = "cldui+";
    return v;
  }
  PairVerdict d = is_pdec(p, tol);
  if (d.status == Verdict::Member) {
    d.cone = "copcp";
    d.route = "pdec";
    return d;
  }
  // (A, B) = (N, M - N_off) with N = A and M = A + B_off when B_off <= 0
  if (p.A_symmetric(1e-12) && p.B_real(1e-12) && p.B_off().real().maxCoeff() <= tol.feas_tol) {
    SymMatrix N(A);
    SymMatrix M(Mat(A + p.B_off().real()));
    PairVerdict l = lift_check(M, N, tol, effort, seed);
    if (l.status != Verdict::Unknown) return l;
  }
  const EffortParams ep = effort_params(effort);
  PairRefutation ref = copcp_refute(p, ep.pair_multistarts, seed);
  if (ref.value < -tol.feas_tol) {
    v.route = "refuter";
    set_refuting(v, p, ref.v, ref.w, "local search");
    return v;
  }
  FilterReport f = necessary_filters(p, tol, effort, seed);
  if (f.sym_cop == Check::Fail) {
    v.route = "filter-cop";
    CVec s = sqrt_vec(f.cop.cert.vector);
    set_refuting(v, p, s, s, "violation of A + A^T + 2 Re(B_off) in COP");
    if (v.cert.value < -tol.feas_tol) return v;
    v.status = Verdict::Unknown;
  }
  if (f.entry == Check::Fail) {
    v.status = Verdict::NonMember;
    v.route = "filter-entry";
    v.cert = {};
    v.cert.kind = "filter";
    v.cert.note = "entry " + std::to_string(f.entry_violation.first) + " " + std::to_string(f.entry_violation.second);
    return v;
  }
  v.status = Verdict::Unknown;
  v.route = "filters-pass";
  v.cert = {};
  v.cert.value = ref.value;
  return v;
}

// ---------------------------------------------------------------------------

namespace {

struct Atom {
  CVec v, w;
};

// pair contributed by one atom
void atom_pair(const Atom& t, Mat& A, CMat& B) {
  Vec a = t.v.cwiseAbs2();
  Vec b = t.w.cwiseAbs2();
  CVec z = t.v.cwiseProduct(t.w);
  A = a * b.transpose();
  B = z * z.adjoint();
}

// atom with v.*w = z and |v|^2 = |z|.*d, |w|^2 = |z|./d
Atom atom_from(const CVec& z, const Vec& d) {
  const int n = static_cast<int>(z.size());
  Atom t{CVec(n), CVec(n)};
  for (int i = 0; i < n; ++i) {
    double m = std::abs(z(i));
    t.v(i) = std::polar(std::sqrt(m * d(i)), std::arg(z(i)));
    t.w(i) = std::sqrt(m / d(i));
  }
  return t;
}

std::optional<std::pair<std::vector<Atom>, Vec>> fit_atoms(const MatrixPair& p, const std::vector<Atom>& pool,
                                                           const Tolerance& tol) {
  const int n = p.n();
  std::vector<Atom> all = pool;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) all.push_back({unit(n, i), unit(n, j)});
  const int m = static_cast<int>(all.size());
  const int rows = n * n + n * (n - 1);
  Mat E = Mat::Zero(rows, m);
  Vec rhs(rows);
  const CMat Bo = p.B_off();
  int r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rhs(r++) = p.A()(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      rhs(r++) = Bo(i, j).real();
      rhs(r++) = Bo(i, j).imag();
    }
  for (int k = 0; k < m; ++k) {
    Mat Ak;
    CMat Bk;
    atom_pair(all[k], Ak, Bk);
    r = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) E(r++, k) = Ak(i, j);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        E(r++, k) = Bk(i, j).real();
        E(r++, k) = Bk(i, j).imag();
      }
  }
  std::vector<optim::Bound> bounds(m);
  optim::LpResult lp = optim::solve_lp(Vec::Ones(m), E, rhs, bounds, optim::Sense::Minimize, tol);
  if (lp.status != optim::LpStatus::Optimal) return std::nullopt;
  std::vector<Atom> used;
  std::vector<double> w;
  for (int k = 0; k < m; ++k)
    if (lp.x(k) > 1e-12) {
      used.push_back(all[k]);
      w.push_back(lp.x(k));
    }
  Vec wv = Eigen::Map<Vec>(w.data(), static_cast<long>(w.size()));
  return std::make_pair(std::move(used), wv);
}

bool atoms_reproduce(const MatrixPair& p, const std::vector<std::pair<CVec, CVec>>& atoms, const Vec& weights,
                     double tol) {
  const int n = p.n();
  if (weights.size() != static_cast<long>(atoms.size()) || (weights.size() && weights.minCoeff() < 0)) return false;
  Mat A = Mat::Zero(n, n);
  CMat B = CMat::Zero(n, n);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    Mat Ak;
    CMat Bk;
    atom_pair({atoms[k].first, atoms[k].second}, Ak, Bk);
    A += weights(static_cast<long>(k)) * Ak;
    B += weights(static_cast<long>(k)) * Bk;
  }
  B.diagonal() = A.diagonal().cast<cplx>();
  const double sc = std::max(scale_of(p.A()), p.B().mat().cwiseAbs().maxCoeff());
  return (A - p.A()).cwiseAbs().maxCoeff() <= tol * sc && (B - p.B().mat()).cwiseAbs().maxCoeff() <= tol * sc;
}

// COPCP element (diag W + lambda J_off, W - lambda J_off) from a copositive W
MatrixPair lifted_dual(const Mat& W, double& lambda) {
  const int n = static_cast<int>(W.rows());
  lambda = std::max(0.0, off_diag(W).maxCoeff());
  Mat J = Mat::Ones(n, n) - Mat::Identity(n, n);
  Mat N = Mat(W.diagonal().asDiagonal()) + lambda * J;
  return MatrixPair(N, HermMatrix(SymMatrix(Mat(W - lambda * J))));
}

}  // namespace

PairVerdict pcp_checks(const MatrixPair& p, const Tolerance& tol, Effort effort, std::uint64_t seed) {
  PairVerdict v = make("pcp", tol);
  const int n = p.n();
  if (!is_pdnn(p, tol)) {
    v.status = Verdict::NonMember;
    v.route = "pdnn";
    v.cert.kind = "pdnn";
    v.cert.note = !is_ewp(p.A(), tol.feas_tol) ? "A not entrywise non-negative"
                  : !is_psd(p.B(), tol)        ? "B not positive semidefinite"
                                               : "A_ij A_ji < |B_ij|^2";
    return v;
  }
  const bool same = p.A_symmetric(1e-12) && p.B_real(1e-12) && (p.A() - p.B().mat().real()).cwiseAbs().maxCoeff() <= 1e-12;
  std::vector<SymMatrix> duals;
  if (same) {
    SymMatrix S(p.A());
    ConeVerdict cp = is_cp(S, tol, effort, seed);
    if (cp.status == Verdict::Member && cp.cert.kind == CertKind::Factorization) {
      const Mat& F = cp.cert.parts[0];
      v.status = Verdict::Member;
      v.route = "cp-factor";
      v.cert.kind = "atoms";
      for (int k = 0; k < F.cols(); ++k) {
        if (F.col(k).norm() == 0) continue;
        CVec s = sqrt_vec(F.col(k));
        v.cert.atoms.emplace_back(s, s);
      }
      v.cert.weights = Vec::Ones(static_cast<long>(v.cert.atoms.size()));
      v.cert.base = std::move(cp);
      return v;
    }
    if (cp.status == Verdict::NonMember && cp.cert.kind == CertKind::DualWitness) {
      double lambda = 0;
      MatrixPair q = lifted_dual(cp.cert.witness, lambda);
      v.status = Verdict::NonMember;
      v.route = "cp-witness";
      v.cert.kind = "dual-pair";
      v.cert.W = cp.cert.witness;
      v.cert.lambda = lambda;
      v.cert.N = S;
      v.cert.value = pair_inner(p, q);
      v.cert.base = std::move(cp);
      return v;
    }
  }

  // pool of atoms from factorizations B = Z Z^*, rotated by random orthogonal matrices
  EigHerm eh = eig_sym(p.B());
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (eh.values(k) > tol.eig_tol) keep.push_back(k);
  const int rk = static_cast<int>(keep.size());
  CMat Z(n, rk);
  for (int c = 0; c < rk; ++c) Z.col(c) = std::sqrt(eh.values(keep[c])) * eh.vectors.col(keep[c]);
  Vec rs = p.A().rowwise().sum(), cs = p.A().colwise().sum().transpose();
  Vec dfit(n);
  for (int i = 0; i < n; ++i) dfit(i) = (rs(i) > 0 && cs(i) > 0) ? std::sqrt(rs(i) / cs(i)) : 1.0;
  std::vector<Atom> pool;
  Rng rng(seed);
  const int cap = 50;
  for (int rot = 0; rk > 0 && static_cast<int>(pool.size()) + 2 * rk <= cap; ++rot) {
    CMat Zr = rot == 0 ? Z : CMat(Z * rng.orthogonal(rk).cast<cplx>());
    for (int c = 0; c < rk; ++c) {
      if (Zr.col(c).cwiseAbs().maxCoeff() < 1e-14) continue;
      pool.push_back(atom_from(Zr.col(c), Vec::Ones(n)));
      pool.push_back(atom_from(Zr.col(c), dfit));
    }
    if (rot > 8 * effort_params(effort).max_level) break;
  }
  if (auto fit = fit_atoms(p, pool, tol)) {
    std::vector<std::pair<CVec, CVec>> atoms;
    for (const Atom& t : fit->first) atoms.emplace_back(t.v, t.w);
    if (atoms_reproduce(p, atoms, fit->second, tol.feas_tol)) {
      v.status = Verdict::Member;
      v.route = "atoms";
      v.cert.kind = "atoms";
      v.cert.atoms = std::move(atoms);
      v.cert.weights = fit->second;
      return v;
    }
  }

  // copositive witnesses from CP tests on symmetric surrogates
  if (!same) {
    duals.emplace_back(Mat(0.5 * (p.A() + p.A().transpose())));
    duals.emplace_back(Mat(Mat(p.A().diagonal().asDiagonal()) + p.B_off().real()));
  }
  for (const SymMatrix& S : duals) {
    ConeVerdict cp = is_cp(S, tol, effort, seed);
    if (cp.status != Verdict::NonMember || cp.cert.kind != CertKind::DualWitness) continue;
    double lambda = 0;
    MatrixPair q = lifted_dual(cp.cert.witness, lambda);
    double val = pair_inner(p, q);
    if (val < -tol.feas_tol) {
      v.status = Verdict::NonMember;
      v.route = "cp-witness";
      v.cert.kind = "dual-pair";
      v.cert.W = cp.cert.witness;
      v.cert.lambda = lambda;
      v.cert.N = S;
      v.cert.value = val;
      v.cert.base = std::move(cp);
      return v;
    }
  }
  v.route = "exhausted";
  return v;
}

// ---------------------------------------------------------------------------

bool verify_pair_certificate(const MatrixPair& p, const PairVerdict& v, std::string* why) {
  const Tolerance& tol = v.tol;
  const PairCertificate& c = v.cert;
  const int n = p.n();
  const Mat& A = p.A();
  if (v.status == Verdict::Unknown) return fail(why, "nothing to verify");
  const std::string& k = c.kind;

  if (k == "refuting-vectors") {
    if (v.status != Verdict::NonMember) return fail(why, "refuting vectors on a member");
    if (c.v.size() != n || c.w.size() != n) return fail(why, "vector length");
    double nrm = c.v.squaredNorm() * c.w.squaredNorm();
    return copcp_form_value(p, c.v, c.w) < -tol.feas_tol * nrm ? true : fail(why, "vectors do not violate");
  }
  if (k == "cldui+") return is_cldui_plus(p, tol) ? true : fail(why, "CLDUI+ conditions fail");
  if (k == "markov-choi") {
    // heuristic member: re-evaluate g at the stored point, the vertices and the uniform point
    if (c.weights.size() != n) return fail(why, "missing maximizer");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && std::abs(p.B()(i, j) + 1.0) > 1e-12) return fail(why, "pair is not of the form (A, diag(A) - J_off)");
    auto g = [&](const Vec& t) {
      Vec u = A * t;
      double s = 0;
      for (int i = 0; i < n; ++i)
        if (t(i) > 0) s += t(i) / (t(i) + u(i));
      return s;
    };
    double worst = std::max(g(c.weights), g(Vec::Constant(n, 1.0 / n)));
    for (int i = 0; i < n; ++i) worst = std::max(worst, g(Vec::Unit(n, i)));
    return worst <= 1.0 + tol.feas_tol ? true : fail(why, "g exceeds 1");
  }
  if (k == "pdnn") return !is_pdnn(p, tol) ? true : fail(why, "pair is PDNN");
  if (k == "filter") {
    FilterReport f = necessary_filters(p, tol, Effort::Fast);
    return f.entry == Check::Fail ? true : fail(why, "entry filter passes");
  }
  if (k == "pdec") {
    if (!is_ewp(A, tol.feas_tol)) return fail(why, "A not entrywise non-negative");
    if (c.B1.n() != n || c.B2.n() != n) return fail(why, "split size");
    if (c.shift < -tol.feas_tol) return fail(why, "shift below tolerance");
    if (min_eig(c.B1) < -tol.eig_tol * std::max(1.0, c.B1.mat().norm())) return fail(why, "B1 not PSD");
    const Mat rho = rho_matrix(A);
    for (int i = 0; i < n; ++i) {
      if (c.B2(i, i).real() < -tol.feas_tol) return fail(why, "B2 diagonal negative");
      for (int j = 0; j < n; ++j)
        if (i != j && std::abs(c.B2(i, j)) > rho(i, j) + tol.feas_tol) return fail(why, "B2 entry too large");
    }
    CMat res = p.B().mat() - c.B1.mat() - c.B2.mat() - cplx(c.shift) * CMat::Identity(n, n);
    return res.cwiseAbs().maxCoeff() <= tol.feas_tol * scale_of(A) ? true : fail(why, "split residual");
  }
  if (k == "pdec-dual") {
    if (c.Y.rows() != n) return fail(why, "dual size");
    HermMatrix Y(c.Y);
    if (min_eig(Y) < -tol.eig_tol) return fail(why, "dual not PSD");
    const Mat rho = rho_matrix(A);
    double val = c.Y.conjugate().cwiseProduct(p.B().mat()).sum().real() + rho.cwiseProduct(c.Y.cwiseAbs()).sum();
    return val < -tol.feas_tol ? true : fail(why, "dual pairing not negative");
  }
  if (k == "dnn-witness") {
    const Mat& X = c.W;
    if (X.rows() != n) return fail(why, "witness size");
    if (X.minCoeff() < -tol.feas_tol || !is_psd(SymMatrix(X), tol)) return fail(why, "witness not DNN");
    return symmetric_part(p).mat().cwiseProduct(X).sum() < -tol.feas_tol ? true : fail(why, "pairing not negative");
  }
  if (k == "lifting") {
    if (!c.base || c.base->status != Verdict::Member) return fail(why, "missing base certificate");
    if (!p.A_symmetric(1e-12) || !p.B_real(1e-12)) return fail(why, "lifting needs a real symmetric pair");
    const Mat& N = c.N.mat();
    if ((N - A).cwiseAbs().maxCoeff() > 1e-12 * scale_of(A)) return fail(why, "N differs from A");
    Mat M = p.B().mat().real() + off_diag(N);
    if (!is_ewp(N, tol.feas_tol) || !is_ewp(Mat(N - M), tol.feas_tol)) return fail(why, "lifting hypotheses");
    return verify_certificate(SymMatrix(M), *c.base, why);
  }
  if (k == "atoms") return atoms_reproduce(p, c.atoms, c.weights, tol.feas_tol) ? true : fail(why, "atoms do not reproduce the pair");
  if (k == "dual-pair") {
    if (!c.base || c.base->status != Verdict::NonMember) return fail(why, "missing base certificate");
    if (!verify_certificate(c.N, *c.base, why)) return false;
    if ((c.base->cert.witness - c.W).cwiseAbs().maxCoeff() > 0) return fail(why, "witness mismatch");
    double lambda = 0;
    MatrixPair q = lifted_dual(c.W, lambda);
    return pair_inner(p, q) < -tol.feas_tol ? true : fail(why, "dual pairing not negative");
  }
  return fail(why, "unknown certificate kind " + k);
}

}  // namespace copcp
