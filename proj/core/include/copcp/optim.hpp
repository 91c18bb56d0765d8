#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "copcp/linalg.hpp"

namespace copcp::optim {

enum class Sense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, DualInfeasible, Stalled, NumericalBreakdown };
const char* to_string(Status s);

// Entry of a symmetric coefficient block in matrix semantics: for row != col the
// value sits at both (row,col) and (col,row), so it contributes 2*value*X(row,col).
struct Entry {
  int block;
  int row;
  int col;
  double value;
};

struct Row {
  std::vector<Entry> psd;
  std::vector<std::pair<int, double>> lp;
  std::vector<std::pair<int, double>> free;

  // coefficient on the matrix element X_b(i,j); off-diagonal elements are counted once
  Row& elem(int b, int i, int j, double coef);
  // coefficient matrix entry (symmetric placement)
  Row& sym(int b, int i, int j, double value);
  Row& lin(int k, double coef);
  Row& var(int k, double coef);
  bool empty() const { return psd.empty() && lp.empty() && free.empty(); }
};

struct SdpProblem {
  std::vector<int> block_dims;
  int lp_dim = 0;
  int free_dim = 0;
  Sense sense = Sense::Minimize;
  Row objective;
  std::vector<Row> rows;
  std::vector<double> rhs;

  int add_block(int n);
  int add_lp(int count);    // returns first index
  int add_free(int count);  // returns first index
  int add_constraint(Row r, double b);

  int num_constraints() const { return static_cast<int>(rows.size()); }
  long num_variables() const;
  void validate() const;
};

struct Residuals {
  double primal = 0;
  double dual = 0;
  double gap = 0;
};

struct SdpSolution {
  Status status = Status::Stalled;
  std::vector<Mat> X;
  Vec x_lp;
  Vec x_free;
  Vec y;              // multipliers of the equality rows
  std::vector<Mat> Z; // dual slack blocks (c - A^T y for MIN, A^T y - c for MAX)
  Vec z_lp;
  double primal_objective = 0;
  double dual_objective = 0;
  Residuals residuals;
  int iterations = 0;
  bool verified = false;
  std::string message;

  double objective() const { return primal_objective; }
};

struct SolverOptions {
  int max_iter = 200;
  double target = 1e-10;
  double step = 0.99;
  bool verbose = false;
};

SdpSolution solve_sdp(const SdpProblem& p, const Tolerance& tol = {}, const SolverOptions& opt = {});

// independent re-check of an OPTIMAL or INFEASIBLE result from the raw problem data
bool verify_solution(const SdpProblem& p, const SdpSolution& s, const Tolerance& tol,
                     Residuals* out = nullptr, std::string* why = nullptr);

void dump_sdpa(const SdpProblem& p, std::ostream& os);

// --- linear programs -------------------------------------------------------

enum class LpStatus { Optimal, Infeasible, Unbounded, Stalled };
const char* to_string(LpStatus s);

struct Bound {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  static Bound free_var() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
};

struct LpResult {
  LpStatus status = LpStatus::Stalled;
  Vec x;
  Vec dual;        // multipliers of A_eq x = b_eq
  Vec reduced;     // c - A_eq^T dual
  double objective = 0;
  Residuals residuals;
};

// minimizes (or maximizes) c^T x subject to A_eq x = b_eq and the per-variable bounds
LpResult solve_lp(const Vec& c, const Mat& A_eq, const Vec& b_eq, const std::vector<Bound>& bounds,
                  Sense sense = Sense::Minimize, const Tolerance& tol = {});

}  // namespace copcp::optim
