#include "copcp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace copcp {

void Tolerance::validate() const {
  if (!std::isfinite(eig_tol) || !std::isfinite(feas_tol) || eig_tol < 0 || feas_tol < 0)
    throw std::invalid_argument("tolerances must be finite and non-negative");
}

SymMatrix::SymMatrix(int n) : m_(Mat::Zero(n, n)) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
}

SymMatrix::SymMatrix(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("symmetric matrix must be square");
  if (m.rows() < 1) throw std::invalid_argument("matrix dimension must be positive");
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(int n) { return SymMatrix(Mat(Mat::Identity(n, n))); }
SymMatrix SymMatrix::ones(int n) { return SymMatrix(Mat(Mat::Ones(n, n))); }
SymMatrix SymMatrix::diagonal(const Vec& d) { return SymMatrix(Mat(d.asDiagonal())); }

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw DimensionMismatch("ragged matrix rows");
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return SymMatrix(m);
}

void SymMatrix::set(int i, int j, double v) {
  m_(i, j) = v;
  m_(j, i) = v;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  if (n() != o.n()) throw DimensionMismatch("sum of matrices of different size");
  return SymMatrix(Mat(m_ + o.m_));
}
SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  if (n() != o.n()) throw DimensionMismatch("difference of matrices of different size");
  return SymMatrix(Mat(m_ - o.m_));
}
SymMatrix SymMatrix::operator-() const { return SymMatrix(Mat(-m_)); }
SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(Mat(s * m_)); }

HermMatrix::HermMatrix(int n) : m_(CMat::Zero(n, n)) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be positive");
}

HermMatrix::HermMatrix(const CMat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermitian matrix must be square");
  if (m.rows() < 1) throw std::invalid_argument("matrix dimension must be positive");
  m_ = 0.5 * (m + m.adjoint());
  for (int i = 0; i < m_.rows(); ++i) m_(i, i) = cplx(m_(i, i).real(), 0.0);
}

HermMatrix::HermMatrix(const SymMatrix& m) : m_(m.mat().cast<cplx>()) {}

void HermMatrix::set(int i, int j, cplx v) {
  if (i == j) {
    m_(i, i) = cplx(v.real(), 0.0);
    return;
  }
  m_(i, j) = v;
  m_(j, i) = std::conj(v);
}

bool HermMatrix::is_real(double tol) const { return m_.imag().cwiseAbs().maxCoeff() <= tol; }

HermMatrix HermMatrix::operator+(const HermMatrix& o) const {
  if (n() != o.n()) throw DimensionMismatch("sum of matrices of different size");
  return HermMatrix(CMat(m_ + o.m_));
}
HermMatrix HermMatrix::operator-(const HermMatrix& o) const {
  if (n() != o.n()) throw DimensionMismatch("difference of matrices of different size");
  return HermMatrix(CMat(m_ - o.m_));
}
HermMatrix HermMatrix::operator*(double s) const { return HermMatrix(CMat(s * m_)); }

Mat realify(const CMat& m) {
  const Eigen::Index n = m.rows();
  Mat r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = m.real();
  r.bottomRightCorner(n, n) = m.real();
  r.topRightCorner(n, n) = -m.imag();
  r.bottomLeftCorner(n, n) = m.imag();
  return r;
}

EigSym eig_sym(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.mat());
  if (es.info() != Eigen::Success) throw SpectralFailure("symmetric eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

EigHerm eig_sym(const HermMatrix& m) {
  const int n = m.n();
  Eigen::SelfAdjointEigenSolver<Mat> es(realify(m.mat()));
  if (es.info() != Eigen::Success) throw SpectralFailure("hermitian eigensolver did not converge");

  // every eigenvalue appears twice; pick n complex-independent vectors greedily
  const Mat& rv = es.eigenvectors();
  std::vector<CVec> cand(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(rv(i, k), rv(n + i, k));
    cand[k] = z;
  }
  std::vector<bool> used(2 * n, false);
  CMat basis(n, n);
  std::vector<double> vals;
  vals.reserve(n);
  for (int a = 0; a < n; ++a) {
    int best = -1;
    double best_norm = -1.0;
    for (int k = 0; k < 2 * n; ++k) {
      if (used[k]) continue;
      double nk = cand[k].norm();
      if (nk > best_norm) {
        best_norm = nk;
        best = k;
      }
    }
    if (best < 0 || best_norm < 1e-6) throw SpectralFailure("lost eigenvector in realification");
    used[best] = true;
    CVec q = cand[best] / best_norm;
    basis.col(a) = q;
    vals.push_back((q.adjoint() * m.mat() * q)(0, 0).real());
    for (int k = 0; k < 2 * n; ++k)
      if (!used[k]) cand[k] -= q * (q.adjoint() * cand[k])(0, 0);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return vals[x] < vals[y]; });
  EigHerm out{Vec(n), CMat(n, n)};
  for (int a = 0; a < n; ++a) {
    out.values(a) = vals[order[a]];
    out.vectors.col(a) = basis.col(order[a]);
  }
  return out;
}

double min_eig(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.mat(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SpectralFailure("symmetric eigensolver did not converge");
  return es.eigenvalues()(0);
}

double min_eig(const HermMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(realify(m.mat()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SpectralFailure("hermitian eigensolver did not converge");
  return es.eigenvalues()(0);
}

bool is_psd(const SymMatrix& m, const Tolerance& tol) { return min_eig(m) >= -tol.eig_tol; }
bool is_psd(const HermMatrix& m, const Tolerance& tol) { return min_eig(m) >= -tol.eig_tol; }

Mat off_diag(const Mat& m) {
  Mat r = m;
  r.diagonal().setZero();
  return r;
}

SymMatrix off_diag(const SymMatrix& m) { return SymMatrix(off_diag(m.mat())); }

HermMatrix off_diag(const HermMatrix& m) {
  CMat r = m.mat();
  r.diagonal().setZero();
  return HermMatrix(r);
}

SymMatrix hadamard(const SymMatrix& a, const SymMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch("hadamard product of different sizes");
  return SymMatrix(Mat(a.mat().cwiseProduct(b.mat())));
}

HermMatrix hadamard(const HermMatrix& a, const HermMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch("hadamard product of different sizes");
  return HermMatrix(CMat(a.mat().cwiseProduct(b.mat())));
}

double inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch("inner product of different sizes");
  return a.mat().cwiseProduct(b.mat()).sum();
}

bool is_ewp(const Mat& m, double tol) { return m.minCoeff() >= -tol; }

}  // namespace copcp
