#pragma once

#include <cstdint>
#include <string>

#include <Eigen/SparseCore>

#include "copcp/cones.hpp"
#include "copcp/pairwise.hpp"

namespace copcp {

using SparseCMat = Eigen::SparseMatrix<cplx>;

enum class ChoiKind { Ldui, Cldui };
enum class MapKind { Duc, Cduc };
const char* to_string(ChoiKind k);

// bipartite operator on C^n (x) C^n, basis index (i, j) -> i*n + j
struct ChoiMatrix {
  int n = 0;
  ChoiKind kind = ChoiKind::Ldui;
  SparseCMat X;
  CMat dense() const { return CMat(X); }
};

// LDUI:  sum A_ij |ij><ij| + sum_{i!=j} B_ij |ij><ji|
// CLDUI: sum A_ij |ij><ij| + sum_{i!=j} B_ij |ii><jj|
ChoiMatrix choi(const MatrixPair& p, ChoiKind kind);

// DUC:  delta_A(Z) + B_off .* Z      CDUC: delta_A(Z) + B_off .* Z^T
// with delta_A(Z) = diag(A diag(Z))
HermMatrix apply_map(const MatrixPair& p, MapKind kind, const HermMatrix& Z);

// orthogonal projection onto the LDUI subspace, returned as its pair
MatrixPair twirl_ldui(const CMat& X);

// <vw| choi(p) |vw>, closed form cross-checked against the explicit Choi matrix
double block_positivity_value(const MatrixPair& p, ChoiKind kind, const CVec& v, const CVec& w);
// <vw| X |vw> straight from the operator
double choi_expectation(const ChoiMatrix& X, const CVec& v, const CVec& w);

struct MarkovChoiReport {
  PairVerdict verdict;   // for (A, diag(A) - J_off)
  double g_max = 0;      // best value of sum t_i / (t_i + (At)_i) found
  Vec t;                 // maximizer on the simplex
  bool cldui_plus = false;  // sum 1/(1 + A_ii) <= 1
  bool pdnn = false;        // additionally A_ij A_ji >= 1
};
// sum_i t_i / (t_i + (At)_i); terms with t_i = 0 count as zero
double markov_choi_g(const Mat& A, const Vec& t);
MarkovChoiReport markov_choi_check(const Mat& A, const Tolerance& tol = {}, Effort effort = Effort::Default,
                                   std::uint64_t seed = kDefaultSeed);

struct DickeState {
  SymMatrix P;
  ChoiMatrix X;  // X^LDUI_{P,P}
};
DickeState dicke(const SymMatrix& P);

struct DickeClass {
  bool psd = false;  // P in EWP
  bool ppt = false;  // P in DNN
  ConeVerdict separable;  // P in CP
  double witness_value = 0;  // <W, P> when separable is NON_MEMBER
};
DickeClass dicke_class(const SymMatrix& P, const Tolerance& tol = {}, Effort effort = Effort::Default,
                       std::uint64_t seed = kDefaultSeed);

// K_r-PPT bosonic extendibility of X^LDUI_{P,P}: P in (K^(r-2))°
ConeVerdict dicke_extendibility(const SymMatrix& P, int r, const Tolerance& tol = {});

struct Witness {
  SymMatrix M, N;
  MatrixPair pair;  // (N, M - N_off)
  ChoiMatrix X;
  int cone_level = -1;  // K^(cone_level); -1 means certified copositive by is_cop
  int level = 0;        // extendibility level r the witness applies to (cone_level + 2)
  ConeVerdict membership;
  // <X^LDUI_{P,P}, X> = <P, M>
  double evaluate(const SymMatrix& P) const;
};
// cone_level in {0,1,2} uses is_kr, -1 uses is_cop
Witness witness_from_cop(const SymMatrix& M, const SymMatrix& N, int cone_level, const Tolerance& tol = {},
                         Effort effort = Effort::Default, std::uint64_t seed = kDefaultSeed);

struct ExtendibleEntangled {
  SymMatrix P;
  double s = 0;            // mixing weight on the Berman block
  ConeVerdict extendible;  // in_kr_dual(P, r - 2)
  ConeVerdict separable;   // is_cp(P): NON_MEMBER with copositive witness W
  Mat W;
  double witness_value = 0;  // <W, P> < 0
};
ExtendibleEntangled find_extendible_entangled(int n, int r, const Tolerance& tol = {});

struct StarCheck {
  Check status = Check::Unknown;
  ConeVerdict base;  // is_kr(A + A^T + 2 Re B_off, r - 1)
};
StarCheck ext_necessary_star(const MatrixPair& p, int r, const Tolerance& tol = {});

}  // namespace copcp
