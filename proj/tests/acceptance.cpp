// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "copcp/catalog.hpp"
#include "copcp/cones.hpp"
#include "copcp/graph6.hpp"
#include "copcp/graphs.hpp"
#include "copcp/pairwise.hpp"
#include "copcp/quantum.hpp"
#include "copcp/random.hpp"

using namespace copcp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool dnn(const Mat& X, double tol) {
  return X.minCoeff() >= -tol && min_eig(SymMatrix(X)) >= -tol;
}

Vec spectrum(const Mat& M) {
  Vec e = eig_sym(SymMatrix(M)).values;
  std::sort(e.data(), e.data() + e.size(), std::greater<>());
  return e;
}

MatrixPair graph_pair(const Graph& g, double t) {
  const int n = g.n();
  return MatrixPair(Mat::Ones(n, n), HermMatrix(SymMatrix(Mat(Mat::Identity(n, n) - t * g.adjacency().mat()))));
}

// min eigenvalue of Phi_t(z z*) = |z|^2 I - t A .* z z*
double phi_rank_one(const Mat& A, double t, const CVec& z) {
  CMat out = -t * A.cast<cplx>().cwiseProduct(z * z.adjoint());
  out.diagonal().array() += z.squaredNorm();
  Eigen::SelfAdjointEigenSolver<CMat> es(out, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// ---------------------------------------------------------------------------

void c1(Outcome& o) {
  for (int n : {5, 7, 9}) {
    auto t0 = std::chrono::steady_clock::now();
    SigmaResult s = sigma(cycle_graph(n), SigmaStrategy::Sdp);
    const double dt = seconds_since(t0);
    const double err = std::abs(s.value - (1 + std::cos(std::numbers::pi / n)));
    o.detail << " C" << n << " err=" << err << " t=" << dt << "s";
    o.require(s.status == optim::Status::Optimal && err <= 1e-6, "C" + std::to_string(n) + " value");
    o.require(dt < 5.0, "C" + std::to_string(n) + " runtime");
  }
}

void c2(Outcome& o) {
  const std::set<std::string> gaps = {"paley5", "petersen", "paley13", "clebsch", "clebsch-complement", "paley17"};
  double worst = 0;
  std::string pattern;
  for (const std::string& name : rank3_table()) {
    Graph g = catalog(name);
    auto p = srg_params(g);
    o.require(p.has_value(), name + " not strongly regular");
    if (!p) continue;
    SigmaResult s = sigma(g, SigmaStrategy::Sdp);
    o.require(s.status == optim::Status::Optimal, name + " SDP status");
    const double err = std::abs(s.value - srg_sigma(*p));
    worst = std::max(worst, err);
    o.require(err <= 1e-6, name + " sigma");
    const int w = clique_number(g);
    const bool gap = s.value < 1 + 1.0 / (w - 1) - 1e-7;
    pattern += gap ? '+' : '-';
    o.require(gap == (gaps.count(name) > 0), name + " gap column");
  }
  o.detail << " 12 rows, max |SDP - closed form| = " << worst << ", gap pattern " << pattern;
}

void c3(Outcome& o) {
  SymMatrix H = horn();
  ConeVerdict cop = is_cop(H);
  o.require(cop.status == Verdict::Member, "is_cop status");
  o.require(cop.level && *cop.level <= 2, "level <= 2");
  o.require(verify_certificate(H, cop), "COP certificate");
  o.detail << " COP level=" << (cop.level ? *cop.level : -1) << " route=" << cop.route;
  ConeVerdict spn = is_spn(H);
  o.require(spn.status == Verdict::NonMember, "is_spn status");
  const Mat& X = spn.cert.witness;
  const double pairing = X.size() ? X.cwiseProduct(H.mat()).sum() : 0.0;
  o.require(X.size() > 0 && dnn(X, 1e-7), "SPN witness DNN");
  o.require(pairing < 0, "<X,H> < 0");
  o.require(verify_certificate(H, spn), "SPN certificate");
  o.detail << "; SPN witness <X,H>=" << pairing;
}

void c4(Outcome& o) {
  Graph w = catalog("w6");
  SigmaResult s = sigma(w, SigmaStrategy::Sdp);
  o.require(s.status == optim::Status::Optimal, "SDP status");
  if (s.P.size() == 0 || s.X.size() == 0) {
    o.require(false, "certificate present");
    return;
  }
  Vec pe = spectrum(s.P), xe = spectrum(s.X);
  Vec pe0(6), xe0(6);
  const double r5 = std::sqrt(5.0);
  pe0 << 2, 2, 2, 0, 0, 0;
  xe0 << (5 - r5) / 10, (3 * r5 - 5) / 20, (3 * r5 - 5) / 20, 0, 0, 0;
  const double ep = (pe - pe0).cwiseAbs().maxCoeff(), ex = (xe - xe0).cwiseAbs().maxCoeff();
  const double trAX = w.adjacency().mat().cwiseProduct(s.X).sum(), trJX = s.X.sum();
  o.require(ep <= 1e-6, "P eigenvalues");
  o.require(ex <= 1e-6, "X eigenvalues");
  o.require(std::abs(trAX - 1) <= 1e-7, "Tr(AX) = 1");
  o.require(std::abs(trJX - (1 + 1 / r5)) <= 1e-7, "Tr(JX)");
  o.detail << " eig(P) err=" << ep << " eig(X) err=" << ex << " Tr(AX)-1=" << trAX - 1
           << " Tr(JX)-(1+1/sqrt5)=" << trJX - (1 + 1 / r5);
}

void c5(Outcome& o) {
  Graph g = catalog("petersen");
  ThresholdReport t = classify_map(g);
  const double e = std::max({std::abs(t.t_cp - 1.0 / 3), std::abs(t.t_ccp - 1), std::abs(t.t_dec - 5.0 / 3),
                             std::abs(t.t_pos - 2)});
  o.require(e <= 1e-6, "thresholds (1/3, 1, 5/3, 2)");
  o.detail << " thresholds err=" << e;

  const Mat& A = g.adjacency().mat();
  Rng rng(kDefaultSeed);
  double worst = INFINITY;
  for (int k = 0; k < 100000; ++k) {
    CVec z = rng.complex_normal(10);
    // half the samples live on a random small support
    if (k % 2) {
      const int keep = 2 + rng.index(4);
      std::vector<int> idx(10);
      for (int i = 0; i < 10; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng.engine());
      for (int i = keep; i < 10; ++i) z(idx[i]) = 0;
    }
    worst = std::min(worst, phi_rank_one(A, 1.9, z) / z.squaredNorm());
  }
  o.require(worst >= -1e-12, "no rank-one violation at t = 1.9");
  MatrixPair p19 = graph_pair(g, 1.9);
  PairVerdict pd = is_pdec(p19);
  o.require(pd.status == Verdict::NonMember && verify_pair_certificate(p19, pd), "is_pdec NON_MEMBER at 1.9");
  o.detail << "; t=1.9: min over 1e5 samples=" << worst << ", pdec=" << to_string(pd.status);

  CVec z = CVec::Zero(10);
  for (int v : max_clique(g)) z(v) = 1;
  const double viol = phi_rank_one(A, 2.1, z);
  o.require(viol < 0, "clique input violates at t = 2.1");
  o.detail << "; t=2.1 clique input min eig=" << viol;
}

void c6(Outcome& o) {
  const int expect_conn[] = {1, 3, 33};
  int idx = 0;
  for (int n : {5, 6, 7}) {
    std::ifstream in(testdata::path("all" + std::to_string(n) + ".g6"));
    auto t0 = std::chrono::steady_clock::now();
    ScanReport r = scan_gap(in);
    const double dt = seconds_since(t0);
    o.require(r.errors.empty(), "scan errors");
    o.require(r.gaps(true) == expect_conn[idx], "n=" + std::to_string(n) + " connected count");
    o.detail << " n=" << n << ": " << r.gaps(true) << " connected (" << r.gaps(false) << " incl. disconnected, "
             << r.records.size() << " graphs, " << dt << "s);";
    if (n == 7) o.require(dt < 1800, "n=7 runtime");
    if (n == 6) {
      // degree sequence + sigma/omega fingerprints of the three drawn graphs
      std::vector<std::string> want;
      for (const char* name : {"tadpole", "square-path", "w6"}) {
        Graph g = catalog(name);
        std::vector<int> d = g.degrees();
        std::sort(d.begin(), d.end());
        std::ostringstream f;
        for (int x : d) f << x;
        f << "/" << clique_number(g) << "/" << std::lround(sigma(g).value * 1e6);
        want.push_back(f.str());
      }
      std::vector<std::string> got;
      for (const GapRecord& rec : r.records) {
        if (!rec.gap || !rec.connected) continue;
        Graph g = decode_graph6(rec.g6);
        std::vector<int> d = g.degrees();
        std::sort(d.begin(), d.end());
        std::ostringstream f;
        for (int x : d) f << x;
        f << "/" << rec.omega << "/" << std::lround(rec.sigma * 1e6);
        got.push_back(f.str());
      }
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      o.require(got == want, "n=6 fingerprints");
    }
    ++idx;
  }
}

void c7(Outcome& o) {
  Rng rng(kDefaultSeed + 7);
  const int n = 5;
  int contradictions = 0, bad_cert = 0;
  int counts[4] = {0, 0, 0, 0};  // members of PCP, CLDUI+, PDEC, COPCP
  for (int k = 0; k < 500; ++k) {
    Mat A = rng.gaussian(n, n).cwiseAbs();
    const double scale = 0.2 + 1.8 * rng.uniform();
    CMat B = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        B(i, j) = scale * cplx(rng.normal(), rng.normal());
        B(j, i) = std::conj(B(i, j));
      }
    for (int i = 0; i < n; ++i) {
      A(i, i) = 0.5 + rng.uniform();
      B(i, i) = A(i, i);
    }
    if (k % 5 == 0) {
      // (S, S) with S completely positive
      Mat F = rng.gaussian(n, n + 1).cwiseAbs();
      A = F * F.transpose();
      B = A.cast<cplx>();
    } else if (k % 5 == 1) {
      // sum of atoms (|v|^2 |w|^2^T, (v.w)(v.w)^*)
      A.setZero();
      B.setZero();
      for (int a = 0; a < 3; ++a) {
        CVec v = rng.complex_normal(n), w = rng.complex_normal(n);
        A += v.cwiseAbs2() * w.cwiseAbs2().transpose();
        CVec vw = v.cwiseProduct(w);
        B += vw * vw.adjoint();
      }
      B.diagonal() = A.diagonal().cast<cplx>();
    }
    MatrixPair p(A, HermMatrix(B));
    PairVerdict pcp = pcp_checks(p), pd = is_pdec(p), cc = is_copcp(p);
    const bool cl = is_cldui_plus(p);
    counts[0] += pcp.status == Verdict::Member;
    counts[1] += cl;
    counts[2] += pd.status == Verdict::Member;
    counts[3] += cc.status == Verdict::Member;
    if (pcp.status == Verdict::Member && !cl) ++contradictions;
    if (cl && pd.status == Verdict::NonMember) ++contradictions;
    if (pd.status == Verdict::Member && cc.status == Verdict::NonMember) ++contradictions;
    for (const PairVerdict* v : {&pcp, &pd, &cc})
      if (v->status != Verdict::Unknown && !verify_pair_certificate(p, *v)) ++bad_cert;
  }
  o.require(contradictions == 0, "chain contradictions");
  o.require(bad_cert == 0, "pair certificates");
  o.detail << " 500 pairs: members PCP/CLDUI+/PDEC/COPCP = " << counts[0] << "/" << counts[1] << "/" << counts[2]
           << "/" << counts[3] << ", contradictions=" << contradictions << ";";

  int hollow_fail = 0;
  for (int k = 0; k < 50; ++k) {
    Mat N = rng.gaussian(n, n).cwiseAbs();
    N = Mat(0.5 * (N + N.transpose()));
    N.diagonal().setZero();
    MatrixPair p(N, HermMatrix(SymMatrix(Mat(-N))));
    PairVerdict cc = is_copcp(p), pd = is_pdec(p);
    if (cc.status != Verdict::Member || pd.status != Verdict::Member || !verify_pair_certificate(p, cc) ||
        !verify_pair_certificate(p, pd))
      ++hollow_fail;
  }
  o.require(hollow_fail == 0, "(N_off, -N_off) members");
  o.detail << " hollow pairs failing=" << hollow_fail << ";";

  int mismatch = 0, ewp_count = 0;
  for (int k = 0; k < 200; ++k) {
    Mat g = rng.gaussian(n, n);
    Mat A = 0.5 * (g + g.transpose());
    if (k % 2 == 0) A = A.cwiseAbs();
    else if (k % 4 == 1) {
      A = A.cwiseAbs();
      const int i = rng.index(n), j = (i + 1 + rng.index(n - 1)) % n;
      A(i, j) = A(j, i) = -0.05 * rng.uniform() - 1e-4;
    }
    const bool ewp = A.minCoeff() >= 0;
    ewp_count += ewp;
    MatrixPair p(A, HermMatrix(SymMatrix(A)));
    PairVerdict cc = is_copcp(p);
    const bool member = cc.status == Verdict::Member;
    if (member != ewp || cc.status == Verdict::Unknown || !verify_pair_certificate(p, cc)) ++mismatch;
  }
  o.require(mismatch == 0, "(A,A) verdict vs EWP");
  o.detail << " (A,A): " << ewp_count << " in EWP, mismatches=" << mismatch;
}

void c8(Outcome& o) {
  for (int n : {3, 5, 8}) {
    const double c = 1 - 1.0 / n;
    bool ok = true;
    for (double x : {c - 1e-3, c + 1e-3}) {
      Mat A = Mat::Constant(n, n, x);
      MarkovChoiReport r = markov_choi_check(A);
      CMat B = -CMat::Ones(n, n);
      for (int i = 0; i < n; ++i) B(i, i) = x;
      MatrixPair p(A, HermMatrix(B));
      const Verdict want = x < c ? Verdict::NonMember : Verdict::Member;
      const bool good = r.verdict.status == want && verify_pair_certificate(p, r.verdict);
      ok = ok && good;
      o.detail << " n=" << n << " x=" << x << ":" << to_string(r.verdict.status) << "(" << r.verdict.cert.kind << ")";
    }
    o.require(ok, "bracket for n=" + std::to_string(n));
  }
}

void c9(Outcome& o) {
  SymMatrix X = berman_dnn();
  ConeVerdict ext = dicke_extendibility(X, 2);
  o.require(ext.status == Verdict::Member && verify_certificate(X, ext), "Berman r=2 extendible");
  DickeClass dc = dicke_class(X);
  o.require(dc.separable.status == Verdict::NonMember && dc.witness_value < 0 && verify_certificate(X, dc.separable),
            "Berman not separable");
  o.detail << " Berman: ext(r=2)=" << to_string(ext.status) << " separable=" << to_string(dc.separable.status)
           << " witness=" << dc.witness_value << ";";
  try {
    ExtendibleEntangled e = find_extendible_entangled(5, 3);
    const bool ok = e.extendible.status == Verdict::Member && e.separable.status == Verdict::NonMember &&
                    e.witness_value < 0 && verify_certificate(e.P, e.extendible) &&
                    verify_certificate(e.P, e.separable);
    o.require(ok, "find_extendible_entangled(5,3) certificates");
    o.detail << " search: s=" << e.s << " witness=" << e.witness_value;
  } catch (const std::exception& ex) {
    o.require(false, std::string("search threw: ") + ex.what());
  }
}

void c10(Outcome& o) {
  Rng rng(kDefaultSeed + 10);
  double worst = 0;
  int failed_checks = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + rng.index(9);
    Mat g = rng.gaussian(n, n);
    Mat M = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    optim::SdpProblem p;
    const int b = p.add_block(n);
    double expect;
    if (k % 2 == 0) {
      // min <M,X>, tr X = 1
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) p.objective.sym(b, i, j, M(i, j));
      optim::Row tr;
      for (int i = 0; i < n; ++i) tr.elem(b, i, i, 1.0);
      p.add_constraint(tr, 1.0);
      expect = es.eigenvalues()(0);
    } else {
      // max t, M - t I = X PSD
      p.sense = optim::Sense::Maximize;
      const int t = p.add_free(1);
      p.objective.var(t, 1.0);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          optim::Row r;
          r.elem(b, i, j, 1.0);
          if (i == j) r.var(t, 1.0);
          p.add_constraint(r, M(i, j));
        }
      expect = es.eigenvalues()(0);
    }
    optim::SdpSolution s = optim::solve_sdp(p);
    const double err = s.status == optim::Status::Optimal ? std::abs(s.primal_objective - expect) : INFINITY;
    worst = std::max(worst, err);
    if (!optim::verify_solution(p, s, {})) ++failed_checks;
  }
  o.require(worst <= 1e-7, "objective error");
  o.require(failed_checks == 0, "self-checks");
  o.detail << " 50 problems, max |error|=" << worst << ", failed self-checks=" << failed_checks;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"sigma of C5, C7, C9 by SDP vs 1+cos(pi/n)", c1},
      {"rank-3 SRG table and gap column", c2},
      {"Horn matrix in COP, outside SPN", c3},
      {"wheel W6 certificates", c4},
      {"Petersen map thresholds and rank-one cross-check", c5},
      {"gap scans over all graphs on 5, 6, 7 vertices", c6},
      {"pairwise inclusion chain", c7},
      {"Markov-Choi transition for xJ", c8},
      {"Dicke extendibility and extendible entangled search", c9},
      {"SDP solver health on eigenvalue problems", c10},
  };
  int failures = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    o.detail.precision(4);
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("criterion %2d %s  %s (%.1fs):%s\n", k, o.pass ? "PASS" : "FAIL", name, seconds_since(t0),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures;
}
