#include "copcp/graphs.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <queue>
#include <thread>

#include "copcp/cones.hpp"
#include "copcp/graph6.hpp"

namespace copcp {

Graph::Graph(int n) : n_(n), adj_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges, std::string name) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
  name_ = std::move(name);
}

Graph Graph::from_adjacency(const Mat& A, std::string name) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw DimensionMismatch("adjacency must be square");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    if (A(i, i) != 0) throw std::invalid_argument("adjacency has a loop");
    for (int j = i + 1; j < n; ++j) {
      if (A(i, j) != A(j, i) || (A(i, j) != 0 && A(i, j) != 1)) throw std::invalid_argument("adjacency not 0/1 symmetric");
      if (A(i, j) == 1) g.add_edge(i, j);
    }
  }
  g.name_ = std::move(name);
  return g;
}

bool Graph::has_edge(int u, int v) const { return adj_(u, v) != 0.0; }

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge vertex out of range");
  if (u == v) throw std::invalid_argument("loops are not allowed");
  if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
  adj_.set(u, v, 1.0);
  ++m_;
  name_.clear();
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) e.emplace_back(i, j);
  return e;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = static_cast<int>(adj_.mat().row(i).sum());
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j)
    if (has_edge(v, j)) out.push_back(j);
  return out;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!has_edge(i, j)) g.add_edge(i, j);
  return g;
}

Graph Graph::induced(const std::vector<int>& vs) const {
  Graph g(static_cast<int>(vs.size()));
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (has_edge(vs[a], vs[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

Graph Graph::disjoint_union(const Graph& o) const {
  Graph g(n_ + o.n_);
  for (auto [u, v] : edges()) g.add_edge(u, v);
  for (auto [u, v] : o.edges()) g.add_edge(n_ + u, n_ + v);
  return g;
}

bool Graph::connected() const {
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n_; ++v)
      if (!seen[v] && has_edge(u, v)) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
  }
  return count == n_;
}

// ---------------------------------------------------------------------------

double lambda_max(const Graph& g) { return eig_sym(g.adjacency()).values.maxCoeff(); }

namespace {

using Bits = std::uint64_t;

// branch and bound with greedy colouring bounds
struct CliqueSearch {
  std::vector<Bits> adj;
  std::vector<int> best, cur;

  void colour_sort(Bits P, std::vector<int>& order, std::vector<int>& colour) const {
    int k = 0;
    Bits U = P;
    while (U) {
      ++k;
      Bits Q = U;
      while (Q) {
        int v = std::countr_zero(Q);
        Q &= ~(Bits{1} << v);
        Q &= ~adj[v];
        U &= ~(Bits{1} << v);
        order.push_back(v);
        colour.push_back(k);
      }
    }
  }

  void expand(Bits P) {
    std::vector<int> order, colour;
    colour_sort(P, order, colour);
    for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
      if (cur.size() + static_cast<std::size_t>(colour[idx]) <= best.size()) return;
      int v = order[idx];
      cur.push_back(v);
      Bits np = P & adj[v];
      if (np)
        expand(np);
      else if (cur.size() > best.size())
        best = cur;
      cur.pop_back();
      P &= ~(Bits{1} << v);
    }
  }
};

}  // namespace

std::vector<int> max_clique(const Graph& g) {
  const int n = g.n();
  if (n > 64) throw SizeLimit("clique search supports n <= 64");
  CliqueSearch cs;
  cs.adj.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.has_edge(i, j)) cs.adj[i] |= Bits{1} << j;
  Bits all = n == 64 ? ~Bits{0} : ((Bits{1} << n) - 1);
  cs.expand(all);
  std::sort(cs.best.begin(), cs.best.end());
  return cs.best;
}

int clique_number(const Graph& g) { return static_cast<int>(max_clique(g).size()); }
int independence_number(const Graph& g) { return clique_number(g.complement()); }

// ---------------------------------------------------------------------------

double SrgParams::r() const {
  double d = lambda - mu;
  return 0.5 * (d + std::sqrt(d * d + 4.0 * (k - mu)));
}
double SrgParams::s() const {
  double d = lambda - mu;
  return 0.5 * (d - std::sqrt(d * d + 4.0 * (k - mu)));
}

std::optional<SrgParams> srg_params(const Graph& g) {
  const int n = g.n();
  std::vector<int> deg = g.degrees();
  if (std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<int>()) != deg.end()) return std::nullopt;
  const Mat& A = g.adjacency().mat();
  Mat A2 = A * A;
  int lam = -1, mu = -1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int c = static_cast<int>(std::lround(A2(i, j)));
      int& slot = g.has_edge(i, j) ? lam : mu;
      if (slot < 0)
        slot = c;
      else if (slot != c)
        return std::nullopt;
    }
  SrgParams p{n, deg[0], std::max(lam, 0), mu < 0 ? deg[0] : mu};
  return p;
}

double srg_sigma(const SrgParams& p) {
  if (p.n < 2 || p.k < 1 || p.k >= p.n || p.lambda < 0 || p.mu < 0 || p.lambda >= p.k)
    throw InconsistentParams("SRG parameters out of range");
  const bool complete = p.k == p.n - 1;
  if (!complete && p.k * (p.k - p.lambda - 1) != (p.n - p.k - 1) * p.mu)
    throw InconsistentParams("k(k - lambda - 1) != (n - k - 1) mu");
  if (p.k - p.mu < 0 && !complete) throw InconsistentParams("eigenvalues are not real");
  const double r = p.r(), s = p.s();
  if (!(r >= -1e-12 && s <= 1e-12)) throw InconsistentParams("expected r >= 0 >= s");
  return p.n * (r + 1.0) / (r * (p.n - 1) + p.k);
}

SigmaStrategy parse_strategy(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "auto") return SigmaStrategy::Auto;
  if (t == "sdp") return SigmaStrategy::Sdp;
  if (t == "twirl") return SigmaStrategy::Twirl;
  if (t == "circulant") return SigmaStrategy::Circulant;
  if (t == "srg3") return SigmaStrategy::Srg3;
  throw std::invalid_argument("unknown sigma strategy '" + s + "'");
}

const char* to_string(SigmaStrategy s) {
  switch (s) {
    case SigmaStrategy::Auto: return "auto";
    case SigmaStrategy::Sdp: return "sdp";
    case SigmaStrategy::Twirl: return "twirl";
    case SigmaStrategy::Circulant: return "circulant";
    default: return "srg3";
  }
}

bool is_cycle(const Graph& g) {
  if (g.n() < 3) return false;
  for (int d : g.degrees())
    if (d != 2) return false;
  return g.connected();
}

bool is_catalog_rank3(const Graph& g) {
  static const char* names[] = {"paley5", "paley9", "petersen", "petersen-complement", "paley13", "gq22", "t6",
                                "clebsch", "clebsch-complement", "hamming24", "hamming24-complement", "paley17", "c5"};
  if (g.name().empty()) return false;
  for (const char* s : names)
    if (g.name() == s) return true;
  return g.name().rfind("k", 0) == 0 && g.num_edges() == g.n() * (g.n() - 1) / 2;
}

namespace {

void require_edge(const Graph& g) {
  if (g.num_edges() == 0) throw PreconditionError("sigma needs a graph with at least one edge");
}

double cycle_closed_form(int n) { return n % 2 == 0 ? 2.0 : 1.0 + std::cos(std::numbers::pi / n); }

}  // namespace

SigmaResult sigma(const Graph& g, SigmaStrategy strategy, const Tolerance& tol) {
  require_edge(g);
  SigmaResult out;
  const int n = g.n();
  if (strategy == SigmaStrategy::Auto) {
    if (is_cycle(g)) {
      out.value = cycle_closed_form(n);
      out.provenance = "cycle-closed-form";
      return out;
    }
    if (is_catalog_rank3(g)) {
      if (auto p = srg_params(g)) {
        out.value = srg_sigma(*p);
        out.provenance = "srg-closed-form";
        return out;
      }
    }
    strategy = SigmaStrategy::Sdp;
  }
  switch (strategy) {
    case SigmaStrategy::Twirl:
      out.value = sigma_twirled(g, tol);
      out.provenance = is_cycle(g) ? "circulant-lp" : "srg-lp";
      return out;
    case SigmaStrategy::Circulant:
      if (!is_cycle(g)) throw UnsupportedSymmetry("circulant strategy needs a cycle");
      out.value = circulant_sigma_lp(n, tol);
      out.provenance = "circulant-lp";
      return out;
    case SigmaStrategy::Srg3: {
      auto p = srg_params(g);
      if (!is_catalog_rank3(g) || !p) throw UnsupportedSymmetry("srg3 strategy needs a catalog rank-3 SRG");
      out.value = srg_sigma(*p);
      out.provenance = "srg-closed-form";
      return out;
    }
    default: break;
  }
  const Mat J = Mat::Ones(n, n);
  ShiftResult sr = spn_max_shift(J, g.adjacency().mat(), tol);
  out.provenance = "sdp";
  out.status = sr.status;
  out.lower = 1.0 + 1.0 / lambda_max(g);
  out.upper = 1.0 + 1.0 / (clique_number(g) - 1);
  if (sr.status != optim::Status::Optimal) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.value = sr.value;
  out.P = sr.P;
  out.E = sr.E;
  out.X = sr.X;
  return out;
}

SigmaDual sigma_dual_bound(const Graph& g, const Tolerance& tol) {
  require_edge(g);
  const int n = g.n();
  optim::SdpProblem p;
  p.sense = optim::Sense::Minimize;
  const int b = p.add_block(n);
  const int e0 = p.add_lp(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.objective.elem(b, i, j, i == j ? 1.0 : 2.0);
  optim::Row tr;
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) {
      if (g.has_edge(i, j)) tr.elem(b, i, j, 2.0);
      optim::Row r;
      r.elem(b, i, j, 1.0).lin(e0 + k, -1.0);
      p.add_constraint(std::move(r), 0.0);
    }
  p.add_constraint(std::move(tr), 1.0);
  optim::SdpSolution sol = optim::solve_sdp(p, tol);
  SigmaDual out;
  out.status = sol.status;
  if (sol.status != optim::Status::Optimal) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.X = sol.X[b];
  out.value = sol.primal_objective;
  return out;
}

// ---------------------------------------------------------------------------

double circulant_sigma_lp(int n, const Tolerance& tol) {
  if (n < 3) throw PreconditionError("cycle needs n >= 3");
  const int h = n / 2;
  // variables: t | p_0..p_h | e_0..e_h | q_0..q_h
  const int nv = 1 + 3 * (h + 1);
  auto P = [](int j) { return 1 + j; };
  auto E = [h](int j) { return 2 + h + j; };
  auto Q = [h](int j) { return 3 + 2 * h + j; };
  Mat Aeq = Mat::Zero(2 * (h + 1), nv);
  Vec beq = Vec::Zero(2 * (h + 1));
  for (int j = 0; j <= h; ++j) {
    Aeq(j, P(j)) = 1;
    Aeq(j, E(j)) = 1;
    if (j == 1) Aeq(j, 0) = 1;
    beq(j) = 1;
  }
  for (int k = 0; k <= h; ++k) {
    const int row = h + 1 + k;
    for (int j = 0; j <= h; ++j) {
      double mult = (j == 0 || 2 * j == n) ? 1.0 : 2.0;
      Aeq(row, P(j)) = mult * std::cos(2.0 * std::numbers::pi * j * k / n);
    }
    Aeq(row, Q(k)) = -1;
  }
  std::vector<optim::Bound> bounds(nv);
  bounds[0] = optim::Bound::free_var();
  for (int j = 0; j <= h; ++j) bounds[P(j)] = optim::Bound::free_var();
  Vec c = Vec::Zero(nv);
  c(0) = 1;
  optim::LpResult r = optim::solve_lp(c, Aeq, beq, bounds, optim::Sense::Maximize, tol);
  if (r.status != optim::LpStatus::Optimal) throw NumericalBreakdown("circulant LP did not solve");
  return r.objective;
}

double srg_sigma_lp(const SrgParams& sp, const Tolerance& tol) {
  const double n = sp.n, k = sp.k, r = sp.r(), s = sp.s();
  // variables: t, a1, b1, c1 (PSD part), a2, b2, c2 >= 0 (EWP part), q1..q3 >= 0
  Mat Aeq = Mat::Zero(6, 10);
  Vec beq(6);
  Aeq.row(0) << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0;
  Aeq.row(1) << 1, 0, 1, 0, 0, 1, 0, 0, 0, 0;
  Aeq.row(2) << 0, 0, 0, 1, 0, 0, 1, 0, 0, 0;
  Aeq.row(3) << 0, 1, k, n - k - 1, 0, 0, 0, -1, 0, 0;
  Aeq.row(4) << 0, 1, r, -(r + 1), 0, 0, 0, 0, -1, 0;
  Aeq.row(5) << 0, 1, s, -(s + 1), 0, 0, 0, 0, 0, -1;
  beq << 1, 1, 1, 0, 0, 0;
  std::vector<optim::Bound> bounds(10);
  for (int i = 0; i < 4; ++i) bounds[i] = optim::Bound::free_var();
  Vec c = Vec::Zero(10);
  c(0) = 1;
  optim::LpResult res = optim::solve_lp(c, Aeq, beq, bounds, optim::Sense::Maximize, tol);
  if (res.status != optim::LpStatus::Optimal) throw NumericalBreakdown("rank-3 LP did not solve");
  return res.objective;
}

double sigma_twirled(const Graph& g, const Tolerance& tol) {
  require_edge(g);
  if (is_cycle(g)) return circulant_sigma_lp(g.n(), tol);
  if (is_catalog_rank3(g))
    if (auto p = srg_params(g)) return srg_sigma_lp(*p, tol);
  throw UnsupportedSymmetry("no symmetry reduction for this graph");
}

// ---------------------------------------------------------------------------

ThetaResult theta_r(const Graph& g, int r, const Tolerance& tol) {
  if (r < 0 || r > 2) throw UnsupportedLevel("theta_r supports r in {0,1,2}");
  const int n = g.n();
  const Mat base = -Mat::Ones(n, n);
  const Mat dir = Mat::Identity(n, n) + g.adjacency().mat();
  ThetaResult out;
  out.level = r;
  ShiftResult sr = r == 0 ? spn_max_shift(base, dir, tol) : kr_max_shift(base, dir, r, tol);
  out.status = sr.status;
  if (sr.status != optim::Status::Optimal) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.value = -sr.value;
  out.P = sr.P;
  out.E = sr.E;
  out.gram = sr.gram;
  return out;
}

ThresholdReport classify_map(const Graph& g, const Tolerance& tol) {
  require_edge(g);
  ThresholdReport t;
  t.lambda = lambda_max(g);
  t.omega = clique_number(g);
  t.t_cp = 1.0 / t.lambda;
  t.t_ccp = 1.0;
  SigmaResult s = sigma(g, SigmaStrategy::Auto, tol);
  t.t_dec = s.value;
  t.prov_dec = s.provenance;
  t.t_pos = 1.0 + 1.0 / (t.omega - 1);
  t.window = s.status == optim::Status::Optimal && t.t_dec < t.t_pos - 1e-7;
  return t;
}

// ---------------------------------------------------------------------------

int ScanReport::gaps(bool connected_only) const {
  int c = 0;
  for (const GapRecord& r : records)
    if (r.gap && (!connected_only || r.connected)) ++c;
  return c;
}

ScanReport scan_gap(std::istream& in, const Tolerance& tol, double margin, int threads) {
  ScanReport rep;
  std::vector<Graph> graphs;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty()) continue;
    try {
      Graph g = decode_graph6(line);
      GapRecord r;
      r.line = ln;
      r.g6 = encode_graph6(g);
      r.n = g.n();
      r.edges = g.num_edges();
      r.connected = g.connected();
      rep.records.push_back(r);
      graphs.push_back(std::move(g));
    } catch (const std::exception& e) {
      rep.errors.push_back({ln, e.what()});
    }
  }
  const int total = static_cast<int>(graphs.size());
  std::atomic<int> next{0};
  auto work = [&]() {
    for (int i = next++; i < total; i = next++) {
      GapRecord& r = rep.records[i];
      const Graph& g = graphs[i];
      r.omega = clique_number(g);
      if (g.num_edges() == 0) {
        r.sigma = std::numeric_limits<double>::infinity();
        continue;
      }
      SigmaResult s = sigma(g, SigmaStrategy::Sdp, tol);
      r.sigma = s.value;
      r.gap = s.status == optim::Status::Optimal && s.value < 1.0 + 1.0 / (r.omega - 1) - margin;
    }
  };
  int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nt = std::min(nt, std::max(1, total));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rep;
}

}  // namespace copcp
