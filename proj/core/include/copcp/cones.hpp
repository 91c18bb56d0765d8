#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "copcp/linalg.hpp"
#include "copcp/optim.hpp"

namespace copcp {

enum class Verdict { Member, NonMember, Unknown };
const char* to_string(Verdict v);

enum class Effort { Fast, Default, Thorough };
Effort parse_effort(const std::string& s);

struct EffortParams {
  int max_level;
  int multistarts;       // COP refuter
  int pair_multistarts;  // COPCP refuter
  int cp_restarts;       // CP factorization
};
EffortParams effort_params(Effort e);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum class CertKind { None, Decomposition, Factorization, ViolatingVector, DualWitness, SosGram, Moments, Theorem };
const char* to_string(CertKind k);

struct Certificate {
  CertKind kind = CertKind::None;
  std::vector<Mat> parts;  // {P, E}, Gram blocks, or {F}
  Mat witness;
  Vec vector;              // violating vector or moment functional
  double value = 0;        // shift s*, pairing <W,M>, or dual optimum
  std::string note;
  std::vector<int> index;  // support / permutation data for structured witnesses
  int level = -1;          // hierarchy level backing a witness
};

struct ConeVerdict {
  Verdict status = Verdict::Unknown;
  std::string cone;
  std::optional<int> level;
  Certificate cert;
  Tolerance tol;
  std::string route;
};

struct ElementaryProfile {
  bool in_ewp = false;
  bool in_psd = false;
  bool in_dnn = false;
};

ElementaryProfile classify_elementary(const SymMatrix& M, const Tolerance& tol = {});

ConeVerdict is_ewp(const SymMatrix& M, const Tolerance& tol = {});
ConeVerdict is_psd_cone(const SymMatrix& M, const Tolerance& tol = {});
ConeVerdict is_dnn(const SymMatrix& M, const Tolerance& tol = {});
ConeVerdict is_spn(const SymMatrix& M, const Tolerance& tol = {});
ConeVerdict is_kr(const SymMatrix& M, int r, const Tolerance& tol = {});
ConeVerdict is_cop(const SymMatrix& M, const Tolerance& tol = {}, Effort effort = Effort::Default,
                   std::uint64_t seed = kDefaultSeed);
ConeVerdict in_kr_dual(const SymMatrix& P, int r, const Tolerance& tol = {});
ConeVerdict is_cp(const SymMatrix& M, const Tolerance& tol = {}, Effort effort = Effort::Default,
                  std::uint64_t seed = kDefaultSeed);

// re-checks the certificate of a verdict against M without re-optimizing
bool verify_certificate(const SymMatrix& M, const ConeVerdict& v, std::string* why = nullptr);

// --- building blocks shared with graphs/pairwise ---------------------------

struct ShiftResult {
  optim::Status status = optim::Status::Stalled;
  double value = 0;
  Mat P, E;                // SPN split of base - value*dir
  std::vector<Mat> gram;   // Gram blocks of base - value*dir (hierarchy form)
  Mat X;                   // dual witness: <X,dir> = 1, <X,base> = value
  Vec moments;
  optim::Residuals residuals;
  int iterations = 0;
};

// max s such that base - s*dir lies in SPN
ShiftResult spn_max_shift(const Mat& base, const Mat& dir, const Tolerance& tol = {});
// max s such that base - s*dir lies in K^(r)
ShiftResult kr_max_shift(const Mat& base, const Mat& dir, int r, const Tolerance& tol = {});

struct Refutation {
  bool found = false;
  Vec v;  // on the simplex
  double value = 0;
};

// minimizes v^T M v over the simplex (supports scan for n <= 12 plus projected gradient)
Refutation cop_refute(const Mat& M, int multistarts, std::uint64_t seed, double feas_tol);

// simplex projection helper
Vec project_simplex(const Vec& v);

// the 5x5 Horn matrix
SymMatrix horn();
// the 5x5 doubly non-negative but not completely positive matrix
SymMatrix berman_dnn();

// copositive W = D P H P^T D on some 5-subset with <W,M> < -feas_tol
std::optional<Certificate> horn_witness(const Mat& M, const Tolerance& tol);

// non-negative factor F with F F^T = M via alternating projections
std::optional<Mat> cp_factorize(const Mat& M, int restarts, std::uint64_t seed, const Tolerance& tol);

}  // namespace copcp
