#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "copcp/cones.hpp"
#include "copcp/linalg.hpp"

namespace copcp {

// (A, B) with A real n x n, B Hermitian, diag(A) == diag(B)
class MatrixPair {
 public:
  MatrixPair() = default;
  MatrixPair(Mat A, HermMatrix B);

  int n() const { return static_cast<int>(A_.rows()); }
  const Mat& A() const { return A_; }
  const HermMatrix& B() const { return B_; }
  // B with its diagonal removed
  CMat B_off() const;
  bool A_symmetric(double tol = 0.0) const;
  bool B_real(double tol = 0.0) const { return B_.is_real(tol); }

 private:
  Mat A_;
  HermMatrix B_;
};

MatrixPair pair_form(const Mat& A, const HermMatrix& B);
MatrixPair pair_form(const SymMatrix& A, const SymMatrix& B);

// <v.*conj(v)| A |w.*conj(w)> + <v.*w| B_off |v.*w>
double copcp_form_value(const MatrixPair& p, const CVec& v, const CVec& w);

enum class Check { Pass, Fail, Unknown };
const char* to_string(Check c);

struct PairCertificate {
  std::string kind;  // refuting-vectors, lifting, pdec, cldui+, atoms, filter, dual-pair, spn-lift, dnn-witness
  CVec v, w;
  double value = 0;
  HermMatrix B1, B2;  // PDEC split B = B1 + B2 + shift*I
  double shift = 0;
  CMat Y;             // PDEC dual witness
  SymMatrix N;        // lifting matrix
  std::optional<ConeVerdict> base;
  std::vector<std::pair<CVec, CVec>> atoms;
  Vec weights;
  Mat W;              // copositive matrix behind a dual pair
  double lambda = 0;
  std::string note;
};

struct PairVerdict {
  Verdict status = Verdict::Unknown;
  std::string cone;
  std::string route;
  PairCertificate cert;
  Tolerance tol;
};

struct FilterReport {
  Check ewp = Check::Unknown;       // A in EWP
  Check sym_cop = Check::Unknown;   // A + A^T + 2 Re(B_off) in COP
  Check entry = Check::Unknown;     // sqrt(A_ii A_jj) + sqrt(A_ij A_ji) >= |B_ij|
  ConeVerdict cop;
  std::pair<int, int> entry_violation{-1, -1};
  bool any_fail() const { return ewp == Check::Fail || sym_cop == Check::Fail || entry == Check::Fail; }
};

// A + A^T + 2 Re(B_off)
SymMatrix symmetric_part(const MatrixPair& p);

FilterReport necessary_filters(const MatrixPair& p, const Tolerance& tol = {}, Effort effort = Effort::Default,
                               std::uint64_t seed = kDefaultSeed);

bool is_pdnn(const MatrixPair& p, const Tolerance& tol = {});
bool is_cldui_plus(const MatrixPair& p, const Tolerance& tol = {});
bool pdec_sufficient(const MatrixPair& p);

PairVerdict is_pdec(const MatrixPair& p, const Tolerance& tol = {});
PairVerdict is_copcp(const MatrixPair& p, const Tolerance& tol = {}, Effort effort = Effort::Default,
                     std::uint64_t seed = kDefaultSeed);
PairVerdict pcp_checks(const MatrixPair& p, const Tolerance& tol = {}, Effort effort = Effort::Default,
                       std::uint64_t seed = kDefaultSeed);

// verdict for the pair (N, A - N_off) transferred from is_cop(A)
PairVerdict lift_check(const SymMatrix& A, const SymMatrix& N, const Tolerance& tol = {},
                       Effort effort = Effort::Default, std::uint64_t seed = kDefaultSeed);
// PDEC verdict for (N, A - N_off) transferred from is_spn(A)
PairVerdict spn_lift_check(const SymMatrix& A, const SymMatrix& N, const Tolerance& tol = {});

struct PairRefutation {
  bool found = false;
  CVec v, w;  // unit vectors
  double value = 0;
};

// multistart minimization of the COPCP form over unit (v, w)
PairRefutation copcp_refute(const MatrixPair& p, int multistarts, std::uint64_t seed);

// pairing <A1,A2> + Re<B1_off,B2_off>
double pair_inner(const MatrixPair& p, const MatrixPair& q);

bool verify_pair_certificate(const MatrixPair& p, const PairVerdict& v, std::string* why = nullptr);

}  // namespace copcp
