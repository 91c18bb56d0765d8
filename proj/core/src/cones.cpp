#include "copcp/cones.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "copcp/random.hpp"
#include "copcp/sos.hpp"

namespace copcp {

using optim::Row;
using optim::SdpProblem;
using optim::Sense;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "MEMBER";
    case Verdict::NonMember: return "NON_MEMBER";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "?";
}

const char* to_string(CertKind k) {
  switch (k) {
    case CertKind::None: return "none";
    case CertKind::Decomposition: return "decomposition";
    case CertKind::Factorization: return "factorization";
    case CertKind::ViolatingVector: return "violating_vector";
    case CertKind::DualWitness: return "dual_witness";
    case CertKind::SosGram: return "sos_gram";
    case CertKind::Moments: return "moments";
    case CertKind::Theorem: return "theorem";
  }
  return "?";
}

Effort parse_effort(const std::string& s) {
  if (s == "fast") return Effort::Fast;
  if (s == "default") return Effort::Default;
  if (s == "thorough") return Effort::Thorough;
  throw std::invalid_argument("unknown effort '" + s + "'");
}

EffortParams effort_params(Effort e) {
  switch (e) {
    case Effort::Fast: return {1, 16, 32, 4};
    case Effort::Default: return {2, 64, 128, 10};
    case Effort::Thorough: return {2, 256, 512, 40};
  }
  return {2, 64, 128, 10};
}

SymMatrix horn() {
  return SymMatrix::from_rows({{1, -1, 1, 1, -1},
                               {-1, 1, -1, 1, 1},
                               {1, -1, 1, -1, 1},
                               {1, 1, -1, 1, -1},
                               {-1, 1, 1, -1, 1}});
}

SymMatrix berman_dnn() {
  return SymMatrix::from_rows({{1, 1, 0, 0, 1},
                               {1, 2, 1, 0, 0},
                               {0, 1, 2, 1, 0},
                               {0, 0, 1, 2, 1},
                               {1, 0, 0, 1, 6}});
}

namespace {

double scale_of(const Mat& M) { return std::max(1.0, M.cwiseAbs().maxCoeff()); }

double min_eig_mat(const Mat& M) {
  Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SpectralFailure("eigensolver failed");
  return es.eigenvalues()(0);
}

ConeVerdict make(const std::string& cone, const Tolerance& tol) {
  ConeVerdict v;
  v.cone = cone;
  v.tol = tol;
  return v;
}

bool fail(std::string* why, const std::string& w) {
  if (why) *why = w;
  return false;
}

}  // namespace

ElementaryProfile classify_elementary(const SymMatrix& M, const Tolerance& tol) {
  ElementaryProfile p;
  p.in_ewp = is_ewp(M.mat(), tol.feas_tol);
  p.in_psd = is_psd(M, tol);
  p.in_dnn = p.in_ewp && p.in_psd;
  return p;
}

ConeVerdict is_ewp(const SymMatrix& M, const Tolerance& tol) {
  ConeVerdict v = make("ewp", tol);
  Eigen::Index i, j;
  double mn = M.mat().minCoeff(&i, &j);
  if (mn >= -tol.feas_tol) {
    v.status = Verdict::Member;
    v.route = "entrywise";
    return v;
  }
  v.status = Verdict::NonMember;
  v.route = "negative-entry";
  v.cert.kind = CertKind::DualWitness;
  v.cert.witness = Mat::Zero(M.n(), M.n());
  v.cert.witness(i, j) = v.cert.witness(j, i) = i == j ? 1.0 : 0.5;
  v.cert.value = M.mat().cwiseProduct(v.cert.witness).sum();
  v.cert.note = "psd";
  return v;
}

ConeVerdict is_psd_cone(const SymMatrix& M, const Tolerance& tol) {
  ConeVerdict v = make("psd", tol);
  EigSym es = eig_sym(M);
  if (es.values(0) >= -tol.eig_tol) {
    v.status = Verdict::Member;
    v.route = "spectrum";
    return v;
  }
  v.status = Verdict::NonMember;
  v.route = "spectrum";
  v.cert.kind = CertKind::ViolatingVector;
  v.cert.vector = es.vectors.col(0);
  v.cert.value = es.values(0);
  return v;
}

ConeVerdict is_dnn(const SymMatrix& M, const Tolerance& tol) {
  ConeVerdict e = is_ewp(M, tol);
  if (e.status == Verdict::NonMember) {
    e.cone = "dnn";
    return e;
  }
  ConeVerdict p = is_psd_cone(M, tol);
  p.cone = "dnn";
  return p;
}

// ---------------------------------------------------------------------------

ShiftResult spn_max_shift(const Mat& base, const Mat& dir, const Tolerance& tol) {
  const int n = static_cast<int>(base.rows());
  if (dir.rows() != n || base.cols() != n || dir.cols() != n) throw DimensionMismatch("shift data size");
  SdpProblem p;
  p.sense = Sense::Maximize;
  const int b = p.add_block(n);
  const int e0 = p.add_lp(n * (n + 1) / 2);
  const int s = p.add_free(1);
  p.objective.var(s, 1.0);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++k) {
      Row r;
      r.elem(b, i, j, 1.0).lin(e0 + k, 1.0);
      if (dir(i, j) != 0.0) r.var(s, dir(i, j));
      p.add_constraint(std::move(r), base(i, j));
    }
  optim::SdpSolution sol = optim::solve_sdp(p, tol);
  ShiftResult out;
  out.status = sol.status;
  out.residuals = sol.residuals;
  out.iterations = sol.iterations;
  if (sol.status != optim::Status::Optimal) return out;
  out.value = sol.primal_objective;
  out.P = sol.X[0];
  out.E = Mat::Zero(n, n);
  out.X = Mat::Zero(n, n);
  k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++k) {
      out.E(i, j) = out.E(j, i) = sol.x_lp(e0 + k);
      double y = sol.y(k);
      out.X(i, j) = out.X(j, i) = i == j ? y : 0.5 * y;
    }
  return out;
}

ShiftResult kr_max_shift(const Mat& base, const Mat& dir, int r, const Tolerance& tol) {
  const int n = static_cast<int>(base.rows());
  sos::GramBasis g = sos::make_basis(n, r);
  Vec cb = sos::form_coefficients(g, base);
  Vec cd = sos::form_coefficients(g, dir);
  SdpProblem p;
  p.sense = Sense::Maximize;
  const int first = sos::add_gram_blocks(g, p);
  const int s = p.add_free(1);
  p.objective.var(s, 1.0);
  for (int t = 0; t < static_cast<int>(g.targets.size()); ++t) {
    Row row = sos::gram_row(g, t, first);
    if (cd(t) != 0.0) row.var(s, cd(t));
    p.add_constraint(std::move(row), cb(t));
  }
  optim::SdpSolution sol = optim::solve_sdp(p, tol);
  ShiftResult out;
  out.status = sol.status;
  out.residuals = sol.residuals;
  out.iterations = sol.iterations;
  if (sol.status != optim::Status::Optimal) return out;
  out.value = sol.primal_objective;
  out.gram.assign(sol.X.begin() + first, sol.X.begin() + first + static_cast<long>(g.blocks.size()));
  out.moments = sol.y;
  out.X = sos::moment_witness(g, sol.y);
  return out;
}

// ---------------------------------------------------------------------------

ConeVerdict is_spn(const SymMatrix& M, const Tolerance& tol) {
  ConeVerdict v = make("spn", tol);
  v.level = 0;
  const int n = M.n();
  ShiftResult sr = spn_max_shift(M.mat(), Mat::Identity(n, n), tol);
  if (sr.status != optim::Status::Optimal) {
    v.route = std::string("solver ") + optim::to_string(sr.status);
    return v;
  }
  v.route = "sdp";
  if (sr.value >= -tol.feas_tol) {
    v.status = Verdict::Member;
    v.cert.kind = CertKind::Decomposition;
    v.cert.parts = {sr.P, sr.E};
    v.cert.value = sr.value;
  } else {
    v.status = Verdict::NonMember;
    v.cert.kind = CertKind::DualWitness;
    v.cert.witness = sr.X;
    v.cert.value = M.mat().cwiseProduct(sr.X).sum();
    v.cert.note = "dnn";
  }
  return v;
}

ConeVerdict is_kr(const SymMatrix& M, int r, const Tolerance& tol) {
  ConeVerdict v = make("kr", tol);
  v.level = r;
  const int n = M.n();
  ShiftResult sr = kr_max_shift(M.mat(), Mat::Identity(n, n), r, tol);
  if (sr.status != optim::Status::Optimal) {
    v.route = std::string("solver ") + optim::to_string(sr.status);
    return v;
  }
  v.route = "sos-sdp";
  if (sr.value >= -tol.feas_tol) {
    v.status = Verdict::Member;
    v.cert.kind = CertKind::SosGram;
    v.cert.parts = sr.gram;
    v.cert.value = sr.value;
    v.cert.level = r;
  } else {
    v.status = Verdict::NonMember;
    v.cert.kind = CertKind::Moments;
    v.cert.vector = sr.moments;
    v.cert.witness = sr.X;
    v.cert.value = sr.value;
    v.cert.level = r;
  }
  return v;
}

// ---------------------------------------------------------------------------

Vec project_simplex(const Vec& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0, theta = 0;
  for (int k = 0; k < n; ++k) {
    css += u[k];
    double t = (css - 1.0) / (k + 1);
    if (u[k] - t > 0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

namespace {

void consider(const Mat& M, Vec v, Refutation& best) {
  if (v.minCoeff() < 0) v = -v;
  v = v.cwiseMax(0.0);
  double s = v.sum();
  if (!(s > 0)) return;
  v /= s;
  double val = v.dot(M * v);
  if (!best.found && best.v.size() == 0) {
    best.v = v;
    best.value = val;
    return;
  }
  if (val < best.value) {
    best.v = v;
    best.value = val;
  }
}

bool same_sign(const Vec& x, double eps) {
  return x.minCoeff() >= -eps || x.maxCoeff() <= eps;
}

Vec local_descent(const Mat& M, Vec v, int iters) {
  double L = std::max(1e-12, 2.0 * M.cwiseAbs().rowwise().sum().maxCoeff());
  double f = v.dot(M * v);
  for (int it = 0; it < iters; ++it) {
    Vec g = 2.0 * (M * v);
    double t = 2.0 / L;
    Vec vn;
    double fn = 0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls) {
      vn = project_simplex(v - t * g);
      fn = vn.dot(M * vn);
      if (fn <= f + 1e-4 * g.dot(vn - v)) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    double step = (vn - v).norm();
    v = vn;
    f = fn;
    if (step < 1e-13) break;
  }
  return v;
}

}  // namespace

Refutation cop_refute(const Mat& M, int multistarts, std::uint64_t seed, double feas_tol) {
  const int n = static_cast<int>(M.rows());
  Refutation best;
  best.value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) consider(M, Vec::Unit(n, i), best);
  consider(M, Vec::Ones(n), best);

  if (n <= 12) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> S;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) S.push_back(i);
      const int k = static_cast<int>(S.size());
      if (k == 1) continue;
      Mat MS(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) MS(a, b) = M(S[a], S[b]);
      Eigen::SelfAdjointEigenSolver<Mat> es(MS);
      Vec u = es.eigenvectors().col(0);
      if (es.eigenvalues()(0) < 0 && same_sign(u, 1e-12)) {
        Vec v = Vec::Zero(n);
        for (int a = 0; a < k; ++a) v(S[a]) = std::abs(u(a));
        consider(M, v, best);
      }
      if (std::abs(es.eigenvalues()(0)) > 1e-12 * scale_of(MS)) {
        Vec x = es.eigenvectors() *
                (es.eigenvalues().cwiseInverse().asDiagonal() * (es.eigenvectors().transpose() * Vec::Ones(k)));
        if (same_sign(x, 0.0)) {
          Vec v = Vec::Zero(n);
          for (int a = 0; a < k; ++a) v(S[a]) = std::abs(x(a));
          consider(M, v, best);
        }
      }
    }
  }

  for (int s = 0; s < multistarts; ++s) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s));
    Vec v = local_descent(M, rng.dirichlet(n), 400);
    consider(M, v, best);
  }
  if (best.v.size()) best.v = local_descent(M, best.v, 200), best.value = best.v.dot(M * best.v);
  best.found = best.value < -feas_tol;
  return best;
}

ConeVerdict is_cop(const SymMatrix& M, const Tolerance& tol, Effort effort, std::uint64_t seed) {
  ConeVerdict v = make("cop", tol);
  const EffortParams ep = effort_params(effort);
  Refutation ref = cop_refute(M.mat(), ep.multistarts, seed, tol.feas_tol);
  if (ref.found) {
    v.status = Verdict::NonMember;
    v.route = "refuter";
    v.cert.kind = CertKind::ViolatingVector;
    v.cert.vector = ref.v;
    v.cert.value = ref.value;
    return v;
  }
  const int n = M.n();
  for (int r = 0; r <= ep.max_level; ++r) {
    if ((r == 2 && n > 8) || (r == 1 && n > 12)) break;
    ConeVerdict k = r == 0 ? is_kr(M, 0, tol) : is_kr(M, r, tol);
    if (k.status == Verdict::Member) {
      v.status = Verdict::Member;
      v.level = r;
      v.route = "kr";
      v.cert = k.cert;
      return v;
    }
  }
  v.route = "exhausted";
  return v;
}

// ---------------------------------------------------------------------------

ConeVerdict in_kr_dual(const SymMatrix& P, int r, const Tolerance& tol) {
  ConeVerdict v = make("kr-dual", tol);
  v.level = r;
  const int n = P.n();
  sos::GramBasis g = sos::make_basis(n, r);
  SdpProblem p;
  p.sense = Sense::Minimize;
  const int first = sos::add_gram_blocks(g, p);
  const int m0 = p.add_free(n * (n + 1) / 2);
  std::vector<Vec> coef;
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++k) {
      Mat E = Mat::Zero(n, n);
      E(i, j) = E(j, i) = 1.0;
      coef.push_back(sos::form_coefficients(g, E));
      const double w = i == j ? 1.0 : 2.0;
      if (P(i, j) != 0.0) p.objective.var(m0 + k, w * P(i, j));
    }
  for (int t = 0; t < static_cast<int>(g.targets.size()); ++t) {
    Row row = sos::gram_row(g, t, first);
    for (int q = 0; q < k; ++q)
      if (coef[q](t) != 0.0) row.var(m0 + q, -coef[q](t));
    p.add_constraint(std::move(row), 0.0);
  }
  Row norm;
  k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++k) norm.var(m0 + k, 2.0);  // <I+J, M>
  const int norm_row = p.add_constraint(std::move(norm), 1.0);

  optim::SdpSolution sol = optim::solve_sdp(p, tol);
  if (sol.status != optim::Status::Optimal) {
    v.route = std::string("solver ") + optim::to_string(sol.status);
    return v;
  }
  v.route = "sos-sdp";
  const double opt = sol.primal_objective;
  if (opt >= -tol.feas_tol) {
    v.status = Verdict::Member;
    v.cert.kind = CertKind::Moments;
    v.cert.vector = -sol.y.head(static_cast<Eigen::Index>(g.targets.size()));
    v.cert.value = sol.y(norm_row);
    v.cert.witness = sos::moment_witness(g, v.cert.vector);
    v.cert.level = r;
  } else {
    v.status = Verdict::NonMember;
    Mat W(n, n);
    k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++k) W(i, j) = W(j, i) = sol.x_free(m0 + k);
    v.cert.kind = CertKind::DualWitness;
    v.cert.witness = W;
    v.cert.parts.assign(sol.X.begin() + first, sol.X.begin() + first + static_cast<long>(g.blocks.size()));
    v.cert.value = P.mat().cwiseProduct(W).sum();
    v.cert.note = "kr";
    v.cert.level = r;
  }
  return v;
}

// ---------------------------------------------------------------------------

std::optional<Certificate> horn_witness(const Mat& M, const Tolerance& tol) {
  const int n = static_cast<int>(M.rows());
  if (n < 5 || n > 12) return std::nullopt;
  const Mat H = horn().mat();
  std::vector<std::array<int, 5>> perms;
  std::set<std::vector<double>> seen;
  std::array<int, 5> pi{0, 1, 2, 3, 4};
  do {
    std::vector<double> key;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) key.push_back(H(pi[a], pi[b]));
    if (seen.insert(key).second) perms.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));

  std::optional<Certificate> best;
  std::vector<int> sel(n, 0);
  std::fill(sel.end() - 5, sel.end(), 1);
  do {
    std::vector<int> S;
    for (int i = 0; i < n; ++i)
      if (sel[i]) S.push_back(i);
    for (const auto& q : perms) {
      Mat Q(5, 5);
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) Q(a, b) = M(S[a], S[b]) * H(q[a], q[b]);
      Refutation rf = cop_refute(Q, 4, 7, tol.feas_tol);
      if (!rf.found) continue;
      if (best && rf.value >= best->value) continue;
      Certificate c;
      c.kind = CertKind::DualWitness;
      c.note = "horn";
      c.witness = Mat::Zero(n, n);
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) c.witness(S[a], S[b]) = rf.v(a) * H(q[a], q[b]) * rf.v(b);
      c.value = M.cwiseProduct(c.witness).sum();
      c.vector = rf.v;
      c.index.assign(S.begin(), S.end());
      c.index.insert(c.index.end(), q.begin(), q.end());
      best = c;
    }
  } while (std::next_permutation(sel.begin(), sel.end()));
  return best;
}

std::optional<Mat> cp_factorize(const Mat& M, int restarts, std::uint64_t seed, const Tolerance& tol) {
  const int n = static_cast<int>(M.rows());
  const int r = n * (n + 1) / 2;
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  if (es.eigenvalues()(0) < -tol.eig_tol * scale_of(M)) return std::nullopt;
  Mat B = Mat::Zero(n, r);
  B.leftCols(n) = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  const double sc = scale_of(M);
  for (int rs = 0; rs < restarts; ++rs) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(rs));
    Mat Q = rng.orthogonal(r);
    for (int it = 0; it < 500; ++it) {
      Mat BQ = B * Q;
      if (BQ.minCoeff() >= -1e-13 * std::sqrt(sc)) {
        Mat F = BQ.cwiseMax(0.0);
        if ((F * F.transpose() - M).cwiseAbs().maxCoeff() <= tol.feas_tol * sc) {
          std::vector<int> keep;
          for (int c = 0; c < r; ++c)
            if (F.col(c).norm() > 1e-14) keep.push_back(c);
          Mat G(n, keep.size());
          for (size_t c = 0; c < keep.size(); ++c) G.col(c) = F.col(keep[c]);
          return G;
        }
      }
      Mat X = BQ.cwiseMax(0.0);
      Eigen::JacobiSVD<Mat> svd(B.transpose() * X, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Q = svd.matrixU() * svd.matrixV().transpose();
    }
  }
  return std::nullopt;
}

ConeVerdict is_cp(const SymMatrix& M, const Tolerance& tol, Effort effort, std::uint64_t seed) {
  ConeVerdict v = make("cp", tol);
  const int n = M.n();
  ConeVerdict e = is_ewp(M, tol);
  if (e.status == Verdict::NonMember) {
    v.status = Verdict::NonMember;
    v.route = "negative-entry";
    v.cert = e.cert;
    v.cert.note = "ewp";
    return v;
  }
  EigSym es = eig_sym(M);
  if (es.values(0) < -tol.eig_tol) {
    v.status = Verdict::NonMember;
    v.route = "not-psd";
    v.cert.kind = CertKind::DualWitness;
    v.cert.witness = es.vectors.col(0) * es.vectors.col(0).transpose();
    v.cert.value = es.values(0);
    v.cert.note = "psd";
    return v;
  }
  const EffortParams ep = effort_params(effort);
  if (auto F = cp_factorize(M.mat(), ep.cp_restarts, seed, tol)) {
    v.status = Verdict::Member;
    v.route = "factorization";
    v.cert.kind = CertKind::Factorization;
    v.cert.parts = {*F};
    return v;
  }
  if (n <= 4) {
    v.status = Verdict::Member;
    v.route = "dnn-small-n";
    v.cert.kind = CertKind::Theorem;
    v.cert.note = "DNN equals CP for n <= 4";
    return v;
  }
  if (auto h = horn_witness(M.mat(), tol)) {
    v.status = Verdict::NonMember;
    v.route = "horn-witness";
    v.cert = *h;
    return v;
  }
  for (int r = 0; r <= std::min(1, ep.max_level); ++r) {
    if (r == 1 && n > 8) break;
    ConeVerdict d = in_kr_dual(M, r, tol);
    if (d.status == Verdict::NonMember) {
      v.status = Verdict::NonMember;
      v.route = "kr-witness";
      v.cert = d.cert;
      v.level = r;
      return v;
    }
  }
  v.route = "exhausted";
  return v;
}

// ---------------------------------------------------------------------------

namespace {

bool verify_kr_gram(const Mat& M, int r, const std::vector<Mat>& gram, double shift, const Tolerance& tol,
                    std::string* why) {
  const int n = static_cast<int>(M.rows());
  sos::GramBasis g = sos::make_basis(n, r);
  if (gram.size() != g.blocks.size()) return fail(why, "Gram block count");
  for (const Mat& G : gram)
    if (min_eig_mat(G) < -tol.eig_tol * std::max(1.0, G.norm())) return fail(why, "Gram block not PSD");
  Vec target = sos::form_coefficients(g, M - shift * Mat::Identity(n, n));
  Vec have = sos::gram_coefficients(g, gram);
  if ((target - have).cwiseAbs().maxCoeff() > tol.feas_tol * scale_of(M))
    return fail(why, "Gram does not reproduce the form");
  return true;
}

bool verify_moments(const sos::GramBasis& g, const Vec& y, const Tolerance& tol, std::string* why) {
  for (const Mat& Mm : sos::moment_matrices(g, y))
    if (min_eig_mat(Mm) < -tol.eig_tol * std::max(1.0, Mm.norm())) return fail(why, "moment matrix not PSD");
  return true;
}

bool verify_copositive_witness(const Certificate& c, const Tolerance& tol, std::string* why) {
  const Mat& W = c.witness;
  const int n = static_cast<int>(W.rows());
  if (c.note == "ewp") return W.minCoeff() >= 0 ? true : fail(why, "witness not EWP");
  if (c.note == "psd") return min_eig_mat(W) >= -tol.eig_tol ? true : fail(why, "witness not PSD");
  if (c.note == "horn") {
    if (c.index.size() != 10 || c.vector.size() != 5) return fail(why, "horn witness layout");
    const Mat H = horn().mat();
    Mat R = Mat::Zero(n, n);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        R(c.index[a], c.index[b]) = c.vector(a) * H(c.index[5 + a], c.index[5 + b]) * c.vector(b);
    if (c.vector.minCoeff() < 0) return fail(why, "horn scaling negative");
    return (R - W).cwiseAbs().maxCoeff() <= 1e-12 ? true : fail(why, "witness is not a scaled Horn");
  }
  if (c.note == "kr") return verify_kr_gram(W, c.level, c.parts, 0.0, tol, why);
  return fail(why, "unknown witness type");
}

}  // namespace

bool verify_certificate(const SymMatrix& Ms, const ConeVerdict& v, std::string* why) {
  const Mat& M = Ms.mat();
  const Tolerance& tol = v.tol;
  const int n = Ms.n();
  const double sc = scale_of(M);
  if (v.status == Verdict::Unknown) return fail(why, "nothing to verify");
  const Certificate& c = v.cert;

  if (v.cone == "ewp" || v.cone == "psd" || v.cone == "dnn") {
    ElementaryProfile pr = classify_elementary(Ms, tol);
    bool in = v.cone == "ewp" ? pr.in_ewp : v.cone == "psd" ? pr.in_psd : pr.in_dnn;
    return in == (v.status == Verdict::Member) ? true : fail(why, "elementary recheck disagrees");
  }
  if (v.cone == "spn") {
    if (v.status == Verdict::Member) {
      if (c.parts.size() != 2) return fail(why, "missing decomposition");
      const Mat& P = c.parts[0];
      const Mat& E = c.parts[1];
      if (c.value < -tol.feas_tol) return fail(why, "shift below tolerance");
      if (min_eig_mat(P) < -tol.eig_tol * std::max(1.0, P.norm())) return fail(why, "P not PSD");
      if (E.minCoeff() < -tol.feas_tol) return fail(why, "E has negative entries");
      Mat res = M - c.value * Mat::Identity(n, n) - P - E;
      return res.cwiseAbs().maxCoeff() <= tol.feas_tol * sc ? true : fail(why, "decomposition residual");
    }
    const Mat& X = c.witness;
    if (min_eig_mat(X) < -tol.eig_tol * std::max(1.0, X.norm()) || X.minCoeff() < -tol.feas_tol)
      return fail(why, "witness not DNN");
    return M.cwiseProduct(X).sum() < -tol.feas_tol ? true : fail(why, "witness pairing not negative");
  }
  if (v.cone == "kr" || (v.cone == "cop" && v.status == Verdict::Member)) {
    const int r = v.level.value_or(c.level);
    if (v.status == Verdict::Member) {
      if (c.value < -tol.feas_tol) return fail(why, "shift below tolerance");
      return verify_kr_gram(M, r, c.parts, c.value, tol, why);
    }
    sos::GramBasis g = sos::make_basis(n, r);
    if (!verify_moments(g, c.vector, tol, why)) return false;
    double li = sos::form_coefficients(g, Mat::Identity(n, n)).dot(c.vector);
    double lm = sos::form_coefficients(g, M).dot(c.vector);
    if (std::abs(li - 1.0) > tol.feas_tol) return fail(why, "moment normalization");
    return lm < -tol.feas_tol ? true : fail(why, "moment pairing not negative");
  }
  if (v.cone == "cop") {
    const Vec& x = c.vector;
    if (x.size() != n || x.minCoeff() < 0 || std::abs(x.sum() - 1.0) > 1e-9) return fail(why, "vector not on simplex");
    return x.dot(M * x) < -tol.feas_tol ? true : fail(why, "vector does not violate");
  }
  if (v.cone == "cp") {
    if (v.status == Verdict::Member) {
      if (c.kind == CertKind::Theorem) {
        ElementaryProfile pr = classify_elementary(Ms, tol);
        return (n <= 4 && pr.in_dnn) ? true : fail(why, "small-n theorem does not apply");
      }
      if (c.parts.size() != 1) return fail(why, "missing factor");
      const Mat& F = c.parts[0];
      if (F.minCoeff() < 0) return fail(why, "factor has negative entries");
      return (F * F.transpose() - M).cwiseAbs().maxCoeff() <= tol.feas_tol * sc ? true : fail(why, "factor residual");
    }
    if (!verify_copositive_witness(c, tol, why)) return false;
    return M.cwiseProduct(c.witness).sum() < -tol.feas_tol ? true : fail(why, "witness pairing not negative");
  }
  if (v.cone == "kr-dual") {
    const int r = v.level.value_or(0);
    sos::GramBasis g = sos::make_basis(n, r);
    if (v.status == Verdict::Member) {
      if (!verify_moments(g, c.vector, tol, why)) return false;
      if (c.value < -tol.feas_tol) return fail(why, "dual optimum below tolerance");
      Mat L = sos::moment_witness(g, c.vector);
      Mat res = M - c.value * (Mat::Identity(n, n) + Mat::Ones(n, n)) - L;
      return res.cwiseAbs().maxCoeff() <= tol.feas_tol * sc ? true : fail(why, "moment representation residual");
    }
    if (!verify_kr_gram(c.witness, r, c.parts, 0.0, tol, why)) return false;
    return M.cwiseProduct(c.witness).sum() < -tol.feas_tol ? true : fail(why, "witness pairing not negative");
  }
  return fail(why, "unknown cone " + v.cone);
}

}  // namespace copcp
