#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "copcp/linalg.hpp"
#include "copcp/optim.hpp"

namespace copcp {

// simple undirected loop-free graph on vertices 0..n-1
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges, std::string name = "");
  static Graph from_adjacency(const Mat& A, std::string name = "");

  int n() const { return n_; }
  int num_edges() const { return m_; }
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  std::vector<std::pair<int, int>> edges() const;
  const SymMatrix& adjacency() const { return adj_; }
  std::vector<int> degrees() const;
  std::vector<int> neighbors(int v) const;

  Graph complement() const;
  Graph induced(const std::vector<int>& vertices) const;
  Graph disjoint_union(const Graph& other) const;
  bool connected() const;

  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }

 private:
  int n_ = 0;
  int m_ = 0;
  SymMatrix adj_;
  std::string name_;
};

double lambda_max(const Graph& g);
// exact clique number; n <= 64
int clique_number(const Graph& g);
std::vector<int> max_clique(const Graph& g);
int independence_number(const Graph& g);

struct SrgParams {
  int n = 0, k = 0, lambda = 0, mu = 0;
  double r() const;
  double s() const;
};

// (n,k,lambda,mu) when g is strongly regular
std::optional<SrgParams> srg_params(const Graph& g);
// n(r+1)/(r(n-1)+k)
double srg_sigma(const SrgParams& p);

enum class SigmaStrategy { Auto, Sdp, Twirl, Circulant, Srg3 };
SigmaStrategy parse_strategy(const std::string& s);
const char* to_string(SigmaStrategy s);

struct SigmaResult {
  double value = 0;
  std::string provenance;  // sdp, circulant-lp, srg-lp, cycle-closed-form, srg-closed-form
  optim::Status status = optim::Status::Optimal;
  Mat P, E;                // J - value*A = P + E (SDP route)
  Mat X;                   // dual DNN witness with Tr(AX) = 1, Tr(JX) = value (SDP route)
  double lower = 0, upper = 0;  // bracket reported when the solver stalls
};

// true when g is a cycle C_n (connected, 2-regular)
bool is_cycle(const Graph& g);
// catalog rank-3 SRGs are recognised by their catalog name
bool is_catalog_rank3(const Graph& g);

SigmaResult sigma(const Graph& g, SigmaStrategy strategy = SigmaStrategy::Auto, const Tolerance& tol = {});

struct SigmaDual {
  double value = 0;
  Mat X;
  optim::Status status = optim::Status::Optimal;
};
// min Tr(JX) over X in DNN with Tr(A X) = 1
SigmaDual sigma_dual_bound(const Graph& g, const Tolerance& tol = {});

// sigma in the fixed-point algebra of the automorphism group (cycles and catalog rank-3 SRGs)
double sigma_twirled(const Graph& g, const Tolerance& tol = {});
double circulant_sigma_lp(int n, const Tolerance& tol = {});
double srg_sigma_lp(const SrgParams& p, const Tolerance& tol = {});

struct ThetaResult {
  double value = 0;
  int level = 0;
  optim::Status status = optim::Status::Optimal;
  std::vector<Mat> gram;  // level >= 1
  Mat P, E;               // level 0
};
// min t such that t(I + A) - J lies in K^(r)
ThetaResult theta_r(const Graph& g, int r, const Tolerance& tol = {});

struct ThresholdReport {
  double t_cp = 0, t_ccp = 1, t_dec = 0, t_pos = 0;
  int omega = 0;
  double lambda = 0;
  bool window = false;  // (t_dec, t_pos] nonempty
  std::string prov_cp = "closed-form", prov_ccp = "closed-form", prov_dec, prov_pos = "closed-form";
};
ThresholdReport classify_map(const Graph& g, const Tolerance& tol = {});

struct GapRecord {
  int line = 0;
  std::string g6;
  int n = 0;
  int edges = 0;
  bool connected = false;
  double sigma = 0;
  int omega = 0;
  bool gap = false;
};
struct ScanError {
  int line = 0;
  std::string message;
};
struct ScanReport {
  std::vector<GapRecord> records;
  std::vector<ScanError> errors;
  int gaps(bool connected_only) const;
};
// sigma(G) < 1 + 1/(omega(G) - 1) - margin; edgeless graphs are recorded without a gap
ScanReport scan_gap(std::istream& in, const Tolerance& tol = {}, double margin = 1e-6, int threads = 0);

}  // namespace copcp
