#include "copcp/optim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace copcp::optim {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "OPTIMAL";
    case Status::Infeasible: return "INFEASIBLE";
    case Status::DualInfeasible: return "DUAL_INFEASIBLE";
    case Status::Stalled: return "STALLED";
    case Status::NumericalBreakdown: return "NUMERICAL_BREAKDOWN";
  }
  return "?";
}

Row& Row::elem(int b, int i, int j, double coef) {
  if (i == j) return sym(b, i, i, coef);
  return sym(b, i, j, 0.5 * coef);
}

Row& Row::sym(int b, int i, int j, double value) {
  if (i > j) std::swap(i, j);
  psd.push_back({b, i, j, value});
  return *this;
}

Row& Row::lin(int k, double coef) {
  lp.emplace_back(k, coef);
  return *this;
}

Row& Row::var(int k, double coef) {
  free.emplace_back(k, coef);
  return *this;
}

int SdpProblem::add_block(int n) {
  if (n < 1) throw std::invalid_argument("block dimension must be positive");
  block_dims.push_back(n);
  return static_cast<int>(block_dims.size()) - 1;
}

int SdpProblem::add_lp(int count) {
  int first = lp_dim;
  lp_dim += count;
  return first;
}

int SdpProblem::add_free(int count) {
  int first = free_dim;
  free_dim += count;
  return first;
}

int SdpProblem::add_constraint(Row r, double b) {
  rows.push_back(std::move(r));
  rhs.push_back(b);
  return static_cast<int>(rows.size()) - 1;
}

long SdpProblem::num_variables() const {
  long v = lp_dim + free_dim;
  for (int d : block_dims) v += static_cast<long>(d) * (d + 1) / 2;
  return v;
}

namespace {

void check_row(const SdpProblem& p, const Row& r, const char* what) {
  for (const Entry& e : r.psd) {
    if (e.block < 0 || e.block >= static_cast<int>(p.block_dims.size()))
      throw std::invalid_argument(std::string(what) + ": block index out of range");
    int n = p.block_dims[e.block];
    if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n)
      throw std::invalid_argument(std::string(what) + ": entry outside its block");
    if (!std::isfinite(e.value)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
  for (auto [k, v] : r.lp)
    if (k < 0 || k >= p.lp_dim || !std::isfinite(v))
      throw std::invalid_argument(std::string(what) + ": bad lp coefficient");
  for (auto [k, v] : r.free)
    if (k < 0 || k >= p.free_dim || !std::isfinite(v))
      throw std::invalid_argument(std::string(what) + ": bad free coefficient");
}

}  // namespace

void SdpProblem::validate() const {
  if (rows.size() != rhs.size()) throw std::invalid_argument("constraint/rhs count mismatch");
  if (num_variables() > 10000) throw SizeLimit("SDP exceeds 10^4 scalar variables");
  check_row(*this, objective, "objective");
  for (size_t i = 0; i < rows.size(); ++i) {
    check_row(*this, rows[i], "constraint");
    if (!std::isfinite(rhs[i])) throw std::invalid_argument("non-finite right-hand side");
  }
}

namespace {

struct BlockRow {
  int con;
  std::vector<Entry> e;
};

struct Data {
  int m = 0, L = 0, F = 0;
  std::vector<int> dims;
  std::vector<std::vector<BlockRow>> brows;
  std::vector<Mat> C;
  Vec c_lp, f, b, scale;
  Mat A_lp, G;
  double cnorm = 0, bnorm = 0;
};

Data build(const SdpProblem& p, double sgn, bool scale_rows) {
  Data d;
  d.m = p.num_constraints();
  d.L = p.lp_dim;
  d.F = p.free_dim;
  d.dims = p.block_dims;
  const int nb = static_cast<int>(d.dims.size());
  d.brows.assign(nb, {});
  d.C.resize(nb);
  for (int b = 0; b < nb; ++b) d.C[b] = Mat::Zero(d.dims[b], d.dims[b]);
  d.c_lp = Vec::Zero(d.L);
  d.f = Vec::Zero(d.F);
  for (const Entry& e : p.objective.psd) {
    d.C[e.block](e.row, e.col) += sgn * e.value;
    if (e.row != e.col) d.C[e.block](e.col, e.row) += sgn * e.value;
  }
  for (auto [k, v] : p.objective.lp) d.c_lp(k) += sgn * v;
  for (auto [k, v] : p.objective.free) d.f(k) += sgn * v;

  d.A_lp = Mat::Zero(d.m, d.L);
  d.G = Mat::Zero(d.m, d.F);
  d.b = Vec::Zero(d.m);
  d.scale = Vec::Ones(d.m);
  for (int i = 0; i < d.m; ++i) {
    const Row& r = p.rows[i];
    double nrm2 = 0;
    std::vector<std::vector<Entry>> per(nb);
    for (const Entry& e : r.psd) {
      per[e.block].push_back(e);
      nrm2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
    }
    for (auto [k, v] : r.lp) {
      d.A_lp(i, k) += v;
    }
    for (auto [k, v] : r.free) {
      d.G(i, k) += v;
    }
    nrm2 += d.A_lp.row(i).squaredNorm() + d.G.row(i).squaredNorm();
    if (nrm2 == 0.0) throw std::invalid_argument("constraint row has no coefficients");
    double s = scale_rows ? 1.0 / std::sqrt(nrm2) : 1.0;
    d.scale(i) = s;
    for (int b = 0; b < nb; ++b) {
      if (per[b].empty()) continue;
      for (Entry& e : per[b]) e.value *= s;
      d.brows[b].push_back({i, std::move(per[b])});
    }
    d.A_lp.row(i) *= s;
    d.G.row(i) *= s;
    d.b(i) = s * p.rhs[i];
  }
  double c2 = d.c_lp.squaredNorm() + d.f.squaredNorm();
  for (const Mat& c : d.C) c2 += c.squaredNorm();
  d.cnorm = std::sqrt(c2);
  d.bnorm = d.b.norm();
  return d;
}

inline double weight(const Entry& e) { return e.row == e.col ? 1.0 : 2.0; }

Vec apply_A(const Data& d, const std::vector<Mat>& X, const Vec& xl, const Vec& u) {
  Vec r = Vec::Zero(d.m);
  for (size_t b = 0; b < d.brows.size(); ++b)
    for (const BlockRow& br : d.brows[b]) {
      double s = 0;
      for (const Entry& e : br.e) s += weight(e) * e.value * X[b](e.row, e.col);
      r(br.con) += s;
    }
  if (d.L) r += d.A_lp * xl;
  if (d.F) r += d.G * u;
  return r;
}

void apply_At(const Data& d, const Vec& y, std::vector<Mat>& S, Vec& sl, Vec& sf) {
  S.resize(d.dims.size());
  for (size_t b = 0; b < d.dims.size(); ++b) {
    S[b] = Mat::Zero(d.dims[b], d.dims[b]);
    for (const BlockRow& br : d.brows[b]) {
      double yi = y(br.con);
      for (const Entry& e : br.e) {
        S[b](e.row, e.col) += yi * e.value;
        if (e.row != e.col) S[b](e.col, e.row) += yi * e.value;
      }
    }
  }
  sl = d.L ? Vec(d.A_lp.transpose() * y) : Vec();
  sf = d.F ? Vec(d.G.transpose() * y) : Vec();
}

double dot_c(const Data& d, const std::vector<Mat>& X, const Vec& xl, const Vec& u) {
  double s = 0;
  for (size_t b = 0; b < X.size(); ++b) s += d.C[b].cwiseProduct(X[b]).sum();
  if (d.L) s += d.c_lp.dot(xl);
  if (d.F) s += d.f.dot(u);
  return s;
}

struct State {
  std::vector<Mat> X, Z;
  Vec xl, zl, u, y;
  double tau = 1, kappa = 1;
};

struct Scale {
  Mat Lx, Lz, R, W;
  Vec lam;
};

double min_eig_sym(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// largest a with L L^T + a D still PSD
double max_step(const Mat& L, const Mat& D) {
  Mat T = L.triangularView<Eigen::Lower>().solve(D);
  T = L.triangularView<Eigen::Lower>().solve(Mat(T.transpose()));
  T = 0.5 * (T + Mat(T.transpose()));
  double rho = min_eig_sym(T);
  return rho >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / rho;
}

struct Kkt {
  Eigen::LLT<Mat> llt;
  Eigen::LDLT<Mat> ldlt;
  bool use_llt = true;
  Mat MiG;
  Eigen::LDLT<Mat> S;
  int F = 0;
  Mat M0;

  bool factor(Mat M, const Mat& G) {
    const int m = static_cast<int>(M.rows());
    M0 = M;
    double diag_max = m ? M.diagonal().cwiseAbs().maxCoeff() : 1.0;
    llt.compute(M);
    use_llt = llt.info() == Eigen::Success;
    if (!use_llt) {
      M.diagonal().array() += 1e-13 * std::max(1.0, diag_max);
      llt.compute(M);
      use_llt = llt.info() == Eigen::Success;
      if (!use_llt) {
        ldlt.compute(M);
        if (ldlt.info() != Eigen::Success) return false;
      }
    }
    F = static_cast<int>(G.cols());
    if (F) {
      MiG = msolve(G);
      Mat Sm = G.transpose() * MiG;
      double smax = Sm.diagonal().cwiseAbs().maxCoeff();
      Sm.diagonal().array() += 1e-14 * std::max(1.0, smax);
      S.compute(Sm);
      if (S.info() != Eigen::Success) return false;
    }
    return true;
  }

  Mat msolve(const Mat& r) const { return use_llt ? Mat(llt.solve(r)) : Mat(ldlt.solve(r)); }

  void solve_once(const Vec& r, const Vec& s, const Mat& G, Vec& dy, Vec& du) const {
    Vec mr = msolve(r);
    if (F) {
      du = S.solve(Vec(G.transpose() * mr - s));
      dy = mr - MiG * du;
    } else {
      du = Vec::Zero(0);
      dy = mr;
    }
  }

  // bordered system [[M, G], [G^T, 0]] [dy; du] = [r; s] with two refinement sweeps
  void solve(const Vec& r, const Vec& s, const Mat& G, Vec& dy, Vec& du) const {
    solve_once(r, s, G, dy, du);
    for (int k = 0; k < 2; ++k) {
      Vec e1 = r - M0 * dy;
      if (F) e1 -= G * du;
      Vec e2 = F ? Vec(s - G.transpose() * dy) : Vec::Zero(0);
      Vec cy, cu;
      solve_once(e1, e2, G, cy, cu);
      dy += cy;
      if (F) du += cu;
    }
  }
};

struct Dir {
  std::vector<Mat> dX, dZ;
  Vec dxl, dzl, du, dy;
  double dtau = 0, dkappa = 0;
};

struct Metrics {
  double pres = 0, dres = 0, gap = 0, pobj = 0, dobj = 0;
  double merit() const { return std::max({pres, dres, gap}); }
};

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const Tolerance& tol, const SolverOptions& opt) {
  tol.validate();
  p.validate();
  const bool trace = opt.verbose || std::getenv("COPCP_SDP_TRACE") != nullptr;
  if (const char* path = std::getenv("COPCP_SDP_DUMP")) {
    // debug aid: append every problem to the named file
    std::ofstream f(path, std::ios::app);
    if (f) dump_sdpa(p, f);
  }
  const double sgn = p.sense == Sense::Minimize ? 1.0 : -1.0;
  const Data d = build(p, sgn, true);
  const int nb = static_cast<int>(d.dims.size());
  const int m = d.m;

  int nu = d.L;
  for (int n : d.dims) nu += n;

  State s;
  s.X.resize(nb);
  s.Z.resize(nb);
  for (int b = 0; b < nb; ++b) {
    s.X[b] = Mat::Identity(d.dims[b], d.dims[b]);
    s.Z[b] = Mat::Identity(d.dims[b], d.dims[b]);
  }
  s.xl = Vec::Ones(d.L);
  s.zl = Vec::Ones(d.L);
  s.u = Vec::Zero(d.F);
  s.y = Vec::Zero(m);

  State best = s;
  Metrics best_m;
  best_m.pres = best_m.dres = best_m.gap = std::numeric_limits<double>::infinity();
  Status verdict = Status::Stalled;
  std::string message;
  int it = 0;
  int no_progress = 0;
  State ray;

  std::vector<Mat> At_b;
  Vec At_l, At_f;

  for (; it <= opt.max_iter; ++it) {
    // residuals of the homogeneous model
    Vec rp = apply_A(d, s.X, s.xl, s.u) - d.b * s.tau;
    apply_At(d, s.y, At_b, At_l, At_f);
    std::vector<Mat> rd(nb);
    double rd2 = 0;
    for (int b = 0; b < nb; ++b) {
      rd[b] = At_b[b] + s.Z[b] - d.C[b] * s.tau;
      rd2 += rd[b].squaredNorm();
    }
    Vec rdl = d.L ? Vec(At_l + s.zl - d.c_lp * s.tau) : Vec();
    Vec rf = d.F ? Vec(At_f - d.f * s.tau) : Vec();
    rd2 += rdl.squaredNorm() + rf.squaredNorm();
    const double cx = dot_c(d, s.X, s.xl, s.u);
    const double by = d.b.dot(s.y);
    const double rg = by - cx - s.kappa;
    double xz = s.tau * s.kappa;
    for (int b = 0; b < nb; ++b) xz += s.X[b].cwiseProduct(s.Z[b]).sum();
    if (d.L) xz += s.xl.dot(s.zl);
    const double mu = xz / (nu + 1);

    Metrics mt;
    mt.pres = rp.norm() / s.tau / (1 + d.bnorm);
    mt.dres = std::sqrt(rd2) / s.tau / (1 + d.cnorm);
    mt.pobj = cx / s.tau;
    mt.dobj = by / s.tau;
    mt.gap = std::abs(mt.pobj - mt.dobj) / (1 + std::abs(mt.pobj));
    if (!std::isfinite(mt.merit()) || !std::isfinite(mu)) {
      verdict = Status::NumericalBreakdown;
      message = "non-finite iterate";
      break;
    }
    if (trace)
      std::cerr << "it " << it << " pres " << mt.pres << " dres " << mt.dres << " gap " << mt.gap
                << " pobj " << mt.pobj << " tau " << s.tau << " kappa " << s.kappa << " mu " << mu << "\n";
    if (mt.merit() < best_m.merit()) {
      if (mt.merit() < 0.5 * best_m.merit()) no_progress = 0;
      best = s;
      best_m = mt;
    } else {
      ++no_progress;
    }
    if (mt.merit() <= opt.target) {
      verdict = Status::Optimal;
      break;
    }

    // infeasibility certificates
    const double tol_inf = 1e-9;
    if (by > 0) {
      double nr = 0;
      for (int b = 0; b < nb; ++b) nr += (At_b[b] + s.Z[b]).squaredNorm();
      if (d.L) nr += (At_l + s.zl).squaredNorm();
      if (d.F) nr += At_f.squaredNorm();
      if (std::sqrt(nr) / by <= tol_inf * (1 + d.cnorm) && s.tau < s.kappa) {
        verdict = Status::Infeasible;
        ray = s;
        break;
      }
    }
    if (cx < 0) {
      Vec ax = apply_A(d, s.X, s.xl, s.u);
      if (ax.norm() / (-cx) <= tol_inf * (1 + d.bnorm) && s.tau < s.kappa) {
        verdict = Status::DualInfeasible;
        ray = s;
        break;
      }
    }
    if (it == opt.max_iter) {
      message = "iteration limit";
      break;
    }
    if (no_progress >= 8) {
      message = "no progress";
      break;
    }

    // Nesterov-Todd scaling
    std::vector<Scale> sc(nb);
    bool ok = true;
    for (int b = 0; b < nb && ok; ++b) {
      Eigen::LLT<Mat> lx(s.X[b]), lz(s.Z[b]);
      if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) {
        ok = false;
        break;
      }
      sc[b].Lx = lx.matrixL();
      sc[b].Lz = lz.matrixL();
      Eigen::JacobiSVD<Mat> svd(sc[b].Lz.transpose() * sc[b].Lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
      sc[b].lam = svd.singularValues();
      if (sc[b].lam.minCoeff() <= 0) {
        ok = false;
        break;
      }
      sc[b].R = sc[b].Lx * svd.matrixV() * sc[b].lam.cwiseSqrt().cwiseInverse().asDiagonal();
      sc[b].W = sc[b].R * sc[b].R.transpose();
    }
    if (!ok) {
      verdict = Status::NumericalBreakdown;
      message = "lost positive definiteness";
      break;
    }
    Vec dl = d.L ? Vec(s.xl.cwiseQuotient(s.zl)) : Vec();
    Vec wl = dl.cwiseSqrt();
    Vec laml = d.L ? Vec(s.xl.cwiseProduct(s.zl).cwiseSqrt()) : Vec();

    // Schur complement
    Mat M = Mat::Zero(m, m);
    for (int b = 0; b < nb; ++b) {
      const Mat& W = sc[b].W;
      const auto& rows = d.brows[b];
      const int n = d.dims[b];
      std::vector<Mat> T(rows.size());
      for (size_t k = 0; k < rows.size(); ++k) {
        if (static_cast<int>(rows[k].e.size()) * 2 > n) {
          Mat A = Mat::Zero(n, n);
          for (const Entry& e : rows[k].e) {
            A(e.row, e.col) += e.value;
            if (e.row != e.col) A(e.col, e.row) += e.value;
          }
          T[k] = W * A * W;
        } else {
          T[k] = Mat::Zero(n, n);
          for (const Entry& e : rows[k].e) {
            if (e.row == e.col) {
              T[k].noalias() += e.value * W.col(e.row) * W.col(e.row).transpose();
            } else {
              T[k].noalias() += e.value * W.col(e.row) * W.col(e.col).transpose();
              T[k].noalias() += e.value * W.col(e.col) * W.col(e.row).transpose();
            }
          }
        }
      }
      for (size_t k1 = 0; k1 < rows.size(); ++k1)
        for (size_t k2 = k1; k2 < rows.size(); ++k2) {
          double v = 0;
          for (const Entry& e : rows[k1].e) v += weight(e) * e.value * T[k2](e.row, e.col);
          M(rows[k1].con, rows[k2].con) += v;
          if (rows[k1].con != rows[k2].con) M(rows[k2].con, rows[k1].con) += v;
        }
    }
    if (d.L) M.noalias() += d.A_lp * dl.asDiagonal() * d.A_lp.transpose();

    Kkt kkt;
    if (!kkt.factor(M, d.G)) {
      verdict = Status::NumericalBreakdown;
      message = "Schur complement factorization failed";
      break;
    }

    // tau direction basis
    std::vector<Mat> WCW(nb);
    for (int b = 0; b < nb; ++b) WCW[b] = sc[b].W * d.C[b] * sc[b].W;
    Vec r1 = d.b + apply_A(d, WCW, d.L ? Vec(dl.cwiseProduct(d.c_lp)) : Vec(), Vec::Zero(d.F));
    Vec dy1, du1;
    kkt.solve(r1, d.f, d.G, dy1, du1);
    std::vector<Mat> Aty1;
    Vec Aty1l, Aty1f;
    apply_At(d, dy1, Aty1, Aty1l, Aty1f);
    std::vector<Mat> dx1(nb);
    for (int b = 0; b < nb; ++b) dx1[b] = sc[b].W * (Aty1[b] - d.C[b]) * sc[b].W;
    Vec dx1l = d.L ? Vec(dl.cwiseProduct(Aty1l - d.c_lp)) : Vec();
    const double g1 = d.b.dot(dy1) - dot_c(d, dx1, dx1l, du1);

    auto direction = [&](double eta, const std::vector<Mat>& Sb, const Vec& Sl, double rtau) {
      Dir D;
      std::vector<Mat> tmp(nb), rsr(nb);
      for (int b = 0; b < nb; ++b) {
        rsr[b] = sc[b].R * Sb[b] * sc[b].R.transpose();
        tmp[b] = eta * sc[b].W * rd[b] * sc[b].W + rsr[b];
      }
      Vec tmpl = d.L ? Vec(eta * dl.cwiseProduct(rdl) + wl.cwiseProduct(Sl)) : Vec();
      Vec r0 = -eta * rp - apply_A(d, tmp, tmpl, Vec::Zero(d.F));
      Vec s0 = d.F ? Vec(-eta * rf) : Vec();
      Vec dy0, du0;
      kkt.solve(r0, s0, d.G, dy0, du0);
      std::vector<Mat> Aty0;
      Vec Aty0l, Aty0f;
      apply_At(d, dy0, Aty0, Aty0l, Aty0f);
      std::vector<Mat> dx0(nb);
      for (int b = 0; b < nb; ++b) dx0[b] = sc[b].W * (Aty0[b] + eta * rd[b]) * sc[b].W + rsr[b];
      Vec dx0l = d.L ? Vec(dl.cwiseProduct(Aty0l + eta * rdl) + wl.cwiseProduct(Sl)) : Vec();
      const double g0 = d.b.dot(dy0) - dot_c(d, dx0, dx0l, du0);
      D.dtau = (-eta * rg + rtau / s.tau - g0) / (g1 + s.kappa / s.tau);
      D.dy = dy0 + D.dtau * dy1;
      D.du = d.F ? Vec(du0 + D.dtau * du1) : Vec();
      D.dX.resize(nb);
      D.dZ.resize(nb);
      std::vector<Mat> Aty;
      Vec Atyl, Atyf;
      apply_At(d, D.dy, Aty, Atyl, Atyf);
      for (int b = 0; b < nb; ++b) {
        D.dX[b] = dx0[b] + D.dtau * dx1[b];
        D.dX[b] = 0.5 * (D.dX[b] + D.dX[b].transpose()).eval();
        D.dZ[b] = -eta * rd[b] - Aty[b] + d.C[b] * D.dtau;
      }
      if (d.L) {
        D.dxl = dx0l + D.dtau * dx1l;
        D.dzl = -eta * rdl - Atyl + d.c_lp * D.dtau;
      }
      D.dkappa = (rtau - s.kappa * D.dtau) / s.tau;
      return D;
    };

    auto step_len = [&](const Dir& D) {
      double a = std::numeric_limits<double>::infinity();
      for (int b = 0; b < nb; ++b) {
        a = std::min(a, max_step(sc[b].Lx, D.dX[b]));
        a = std::min(a, max_step(sc[b].Lz, D.dZ[b]));
      }
      for (int k = 0; k < d.L; ++k) {
        if (D.dxl(k) < 0) a = std::min(a, -s.xl(k) / D.dxl(k));
        if (D.dzl(k) < 0) a = std::min(a, -s.zl(k) / D.dzl(k));
      }
      if (D.dtau < 0) a = std::min(a, -s.tau / D.dtau);
      if (D.dkappa < 0) a = std::min(a, -s.kappa / D.dkappa);
      return a;
    };

    // predictor
    std::vector<Mat> Sa(nb);
    for (int b = 0; b < nb; ++b) Sa[b] = Mat(Vec(-sc[b].lam).asDiagonal());
    Vec Sal = d.L ? Vec(-laml) : Vec();
    Dir Da = direction(1.0, Sa, Sal, -s.tau * s.kappa);
    double aa = std::min(1.0, step_len(Da));

    double xz_aff = (s.tau + aa * Da.dtau) * (s.kappa + aa * Da.dkappa);
    for (int b = 0; b < nb; ++b)
      xz_aff += (s.X[b] + aa * Da.dX[b]).cwiseProduct(s.Z[b] + aa * Da.dZ[b]).sum();
    if (d.L) xz_aff += (s.xl + aa * Da.dxl).dot(s.zl + aa * Da.dzl);
    double sigma = std::clamp(std::pow(std::max(xz_aff, 0.0) / xz, 3.0), 0.0, 1.0);

    // corrector
    std::vector<Mat> Sc(nb);
    for (int b = 0; b < nb; ++b) {
      const Mat& R = sc[b].R;
      Mat Rinv = R.inverse();
      Mat dxt = Rinv * Da.dX[b] * Rinv.transpose();
      Mat dzt = R.transpose() * Da.dZ[b] * R;
      Mat prod = 0.5 * (dxt * dzt + dzt * dxt);
      const Vec& lam = sc[b].lam;
      const int n = d.dims[b];
      Mat rc = -prod;
      for (int i = 0; i < n; ++i) rc(i, i) += -lam(i) * lam(i) + sigma * mu;
      Sc[b].resize(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Sc[b](i, j) = 2.0 * rc(i, j) / (lam(i) + lam(j));
    }
    Vec Scl;
    if (d.L) {
      Scl = Vec(d.L);
      for (int k = 0; k < d.L; ++k)
        Scl(k) = (-laml(k) * laml(k) - Da.dxl(k) * Da.dzl(k) + sigma * mu) / laml(k);
    }
    double rtau = -s.tau * s.kappa - Da.dtau * Da.dkappa + sigma * mu;
    Dir Dc = direction(1.0 - sigma, Sc, Scl, rtau);
    double ac = std::min(1.0, opt.step * step_len(Dc));
    if (!(ac > 1e-12)) {
      message = "step length collapsed";
      break;
    }

    for (int b = 0; b < nb; ++b) {
      s.X[b] += ac * Dc.dX[b];
      s.Z[b] += ac * Dc.dZ[b];
      s.X[b] = 0.5 * (s.X[b] + s.X[b].transpose()).eval();
      s.Z[b] = 0.5 * (s.Z[b] + s.Z[b].transpose()).eval();
    }
    if (d.L) {
      s.xl += ac * Dc.dxl;
      s.zl += ac * Dc.dzl;
    }
    if (d.F) s.u += ac * Dc.du;
    s.y += ac * Dc.dy;
    s.tau += ac * Dc.dtau;
    s.kappa += ac * Dc.dkappa;
  }

  SdpSolution out;
  out.iterations = it;
  out.message = message;

  if (verdict == Status::Infeasible || verdict == Status::DualInfeasible) {
    out.status = verdict;
    if (verdict == Status::Infeasible) {
      // Farkas ray normalized so that b^T y = 1 (internal sign)
      double by = d.b.dot(ray.y);
      Vec yi = ray.y / by;
      out.y = yi.cwiseProduct(d.scale);
      if (sgn < 0) out.y = -out.y;
      out.Z.resize(nb);
      for (int b = 0; b < nb; ++b) out.Z[b] = ray.Z[b] / by;
      out.z_lp = d.L ? Vec(ray.zl / by) : Vec();
    } else {
      double cx = -dot_c(d, ray.X, ray.xl, ray.u);
      out.X.resize(nb);
      for (int b = 0; b < nb; ++b) out.X[b] = ray.X[b] / cx;
      out.x_lp = d.L ? Vec(ray.xl / cx) : Vec();
      out.x_free = d.F ? Vec(ray.u / cx) : Vec();
    }
  } else {
    const State& f = best;
    out.X.resize(nb);
    out.Z.resize(nb);
    for (int b = 0; b < nb; ++b) {
      out.X[b] = f.X[b] / f.tau;
      out.Z[b] = f.Z[b] / f.tau;
    }
    out.x_lp = d.L ? Vec(f.xl / f.tau) : Vec::Zero(0);
    out.z_lp = d.L ? Vec(f.zl / f.tau) : Vec::Zero(0);
    out.x_free = d.F ? Vec(f.u / f.tau) : Vec::Zero(0);
    Vec yi = f.y / f.tau;
    out.y = yi.cwiseProduct(d.scale);
    if (sgn < 0) out.y = -out.y;
    out.primal_objective = sgn * best_m.pobj;
    out.dual_objective = sgn * best_m.dobj;
    if (verdict == Status::Optimal) {
      out.status = Status::Optimal;
    } else if (best_m.merit() <= 0.1 * tol.feas_tol) {
      out.status = Status::Optimal;
      out.message += (out.message.empty() ? "" : "; ") + std::string("reduced accuracy");
    } else {
      out.status = verdict == Status::NumericalBreakdown ? verdict : Status::Stalled;
    }
  }

  if (out.status == Status::Optimal || out.status == Status::Infeasible ||
      out.status == Status::DualInfeasible) {
    std::string why;
    out.verified = verify_solution(p, out, tol, &out.residuals, &why);
    if (!out.verified) {
      out.status = Status::Stalled;
      out.message += (out.message.empty() ? "" : "; ") + ("self-check failed: " + why);
    }
  } else {
    verify_solution(p, out, tol, &out.residuals, nullptr);
  }
  return out;
}

bool verify_solution(const SdpProblem& p, const SdpSolution& s, const Tolerance& tol, Residuals* out,
                     std::string* why) {
  const double sgn = p.sense == Sense::Minimize ? 1.0 : -1.0;
  const Data d = build(p, 1.0, false);
  const int nb = static_cast<int>(d.dims.size());
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (s.status == Status::Infeasible) {
    if (s.y.size() != d.m) return fail("missing ray");
    // user-facing ray: for MIN, A^T y <= 0 in the cone sense with b^T y = 1
    Vec y = sgn * s.y;
    std::vector<Mat> S;
    Vec sl, sf;
    apply_At(d, y, S, sl, sf);
    double by = d.b.dot(y);
    if (!(by > 0.5)) return fail("ray does not improve");
    for (int b = 0; b < nb; ++b) {
      Mat Zr = -S[b];
      if (min_eig_sym(Zr) < -tol.eig_tol * std::max(1.0, Zr.norm())) return fail("ray slack not PSD");
    }
    if (d.L && (-sl).minCoeff() < -tol.feas_tol) return fail("ray lp slack negative");
    if (d.F && sf.lpNorm<Eigen::Infinity>() > tol.feas_tol) return fail("ray free residual");
    if (out) *out = {};
    return true;
  }
  if (static_cast<int>(s.X.size()) != nb) return fail("missing primal blocks");
  if (s.status == Status::DualInfeasible) {
    Vec xl = d.L ? s.x_lp : Vec();
    Vec u = d.F ? s.x_free : Vec();
    double cx = sgn * dot_c(d, s.X, xl, u);
    if (!(cx < -0.5)) return fail("ray does not decrease the objective");
    if (apply_A(d, s.X, xl, u).norm() > tol.feas_tol) return fail("ray leaves the affine hull");
    for (int b = 0; b < nb; ++b)
      if (min_eig_sym(s.X[b]) < -tol.eig_tol * std::max(1.0, s.X[b].norm())) return fail("ray not PSD");
    if (d.L && xl.minCoeff() < -tol.feas_tol) return fail("ray lp part negative");
    if (out) *out = {};
    return true;
  }
  if (s.y.size() != d.m) return fail("missing multipliers");
  Vec xl = d.L ? s.x_lp : Vec();
  Vec u = d.F ? s.x_free : Vec();
  Vec rp = apply_A(d, s.X, xl, u) - d.b;
  double pres = rp.norm() / (1 + d.b.norm());

  // dual slack rebuilt from y alone
  std::vector<Mat> S;
  Vec sl, sf;
  apply_At(d, s.y, S, sl, sf);
  double dres = 0, cn = 0, psd_viol = 0;
  for (int b = 0; b < nb; ++b) {
    Mat Zb = sgn * (d.C[b] - S[b]);
    cn += d.C[b].squaredNorm();
    double me = min_eig_sym(Zb);
    psd_viol = std::max(psd_viol, -me / std::max(1.0, Zb.norm()));
    double mx = min_eig_sym(s.X[b]);
    if (mx < -tol.eig_tol * std::max(1.0, s.X[b].norm())) return fail("primal block not PSD");
  }
  if (d.L) {
    cn += d.c_lp.squaredNorm();
    Vec zl = sgn * (d.c_lp - sl);
    if (xl.minCoeff() < -tol.feas_tol) return fail("primal lp variable negative");
    psd_viol = std::max(psd_viol, -zl.minCoeff() / (1 + std::sqrt(cn)));
  }
  if (d.F) {
    cn += d.f.squaredNorm();
    dres = (sf - d.f).norm();
  }
  dres = std::max(dres / (1 + std::sqrt(cn)), psd_viol);
  double pobj = dot_c(d, s.X, xl, u);
  double dobj = d.b.dot(s.y);
  double gap = std::abs(pobj - dobj) / (1 + std::abs(pobj));
  if (out) *out = {pres, dres, gap};
  if (pres > tol.feas_tol) return fail("primal residual " + std::to_string(pres));
  if (dres > tol.feas_tol) return fail("dual residual " + std::to_string(dres));
  if (gap > tol.feas_tol) return fail("duality gap " + std::to_string(gap));
  return true;
}

void dump_sdpa(const SdpProblem& p, std::ostream& os) {
  os << "# copcp sparse sdp v1\n";
  os << "sense " << (p.sense == Sense::Minimize ? "min" : "max") << "\n";
  os << "blocks " << p.block_dims.size();
  for (int n : p.block_dims) os << ' ' << n;
  os << "\nlp " << p.lp_dim << "\nfree " << p.free_dim << "\nconstraints " << p.rows.size() << "\n";
  auto row = [&](const std::string& tag, const Row& r) {
    for (const Entry& e : r.psd) os << tag << " psd " << e.block << ' ' << e.row << ' ' << e.col << ' ' << e.value << "\n";
    for (auto [k, v] : r.lp) os << tag << " lp " << k << ' ' << v << "\n";
    for (auto [k, v] : r.free) os << tag << " free " << k << ' ' << v << "\n";
  };
  os.precision(17);
  row("obj", p.objective);
  for (size_t i = 0; i < p.rows.size(); ++i) {
    os << "rhs " << i << ' ' << p.rhs[i] << "\n";
    row("con " + std::to_string(i), p.rows[i]);
  }
}

}  // namespace copcp::optim
