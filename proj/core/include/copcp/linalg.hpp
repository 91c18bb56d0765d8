#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "copcp/errors.hpp"

namespace copcp {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

struct Tolerance {
  double eig_tol = 1e-8;
  double feas_tol = 1e-7;

  void validate() const;
};

class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  // symmetrized as (m + m^T)/2
  explicit SymMatrix(const Mat& m);

  static SymMatrix identity(int n);
  static SymMatrix ones(int n);
  static SymMatrix diagonal(const Vec& d);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int n() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v);
  const Mat& mat() const { return m_; }
  Vec diag() const { return m_.diagonal(); }

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator-() const;
  SymMatrix operator*(double s) const;
  friend SymMatrix operator*(double s, const SymMatrix& m) { return m * s; }

 private:
  Mat m_;
};

class HermMatrix {
 public:
  HermMatrix() = default;
  explicit HermMatrix(int n);
  explicit HermMatrix(const CMat& m);
  explicit HermMatrix(const SymMatrix& m);

  int n() const { return static_cast<int>(m_.rows()); }
  cplx operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, cplx v);
  const CMat& mat() const { return m_; }
  Vec diag() const { return m_.diagonal().real(); }
  bool is_real(double tol = 0.0) const;
  SymMatrix real_part() const { return SymMatrix(Mat(m_.real())); }

  HermMatrix operator+(const HermMatrix& o) const;
  HermMatrix operator-(const HermMatrix& o) const;
  HermMatrix operator*(double s) const;

 private:
  CMat m_;
};

struct EigSym {
  Vec values;   // ascending
  Mat vectors;  // columns
};
struct EigHerm {
  Vec values;
  CMat vectors;
};

EigSym eig_sym(const SymMatrix& m);
EigHerm eig_sym(const HermMatrix& m);

double min_eig(const SymMatrix& m);
double min_eig(const HermMatrix& m);
bool is_psd(const SymMatrix& m, const Tolerance& tol = {});
bool is_psd(const HermMatrix& m, const Tolerance& tol = {});

SymMatrix off_diag(const SymMatrix& m);
HermMatrix off_diag(const HermMatrix& m);
Mat off_diag(const Mat& m);
SymMatrix hadamard(const SymMatrix& a, const SymMatrix& b);
HermMatrix hadamard(const HermMatrix& a, const HermMatrix& b);

double inner(const SymMatrix& a, const SymMatrix& b);
bool is_ewp(const Mat& m, double tol);

// real symmetric 2n x 2n embedding [[Re, -Im], [Im, Re]]
Mat realify(const CMat& m);

}  // namespace copcp
