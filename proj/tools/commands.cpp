#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "copcp/catalog.hpp"
#include "copcp/graph6.hpp"
#include "copcp/graphs.hpp"
#include "copcp/quantum.hpp"

namespace copcp::cli {

namespace {

json load_matrix_input(const std::string& path, const char* key, std::string& bytes) {
  if (path.empty()) throw UsageError(std::string("missing --") + key);
  bytes += read_text_file(path);
  json j = load_json_file(path);
  if (j.is_object() && j.contains(key)) return j.at(key);
  return j;
}

Graph read_edge_list(const std::string& path, std::string& bytes) {
  const std::string text = read_text_file(path);
  bytes += text;
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n) || n < 1) throw UsageError(path + ": first line must be the vertex count");
  Graph g(n);
  int u, v, line = 1;
  while (in >> u >> v) {
    ++line;
    if (u < 0 || v < 0 || u >= n || v >= n || u == v || g.has_edge(u, v))
      throw UsageError(path + ": bad edge on line " + std::to_string(line));
    g.add_edge(u, v);
  }
  if (!in.eof()) throw UsageError(path + ": malformed edge list near line " + std::to_string(line + 1));
  return g;
}

Graph resolve_graph(const std::string& spec, std::string& bytes) {
  if (spec.empty()) throw UsageError("missing --graph");
  if (spec.rfind("g6:", 0) == 0) {
    bytes += spec;
    try {
      return decode_graph6(spec.substr(3));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (std::filesystem::is_regular_file(spec)) return read_edge_list(spec, bytes);
  bytes += spec;
  try {
    return catalog(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json graph_json(const Graph& g) {
  return {{"g6", encode_graph6(g)}, {"n", g.n()}, {"edges", g.num_edges()}, {"name", g.name()}};
}

Graph graph_from_input(const json& in) {
  Graph g = decode_graph6(in.at("g6").get<std::string>());
  g.set_name(in.value("name", ""));
  return g;
}

json sigma_json(const SigmaResult& s) {
  json j = {{"value", std::isfinite(s.value) ? json(s.value) : json(nullptr)},
            {"provenance", s.provenance},
            {"status", optim::to_string(s.status)}};
  if (s.provenance == "sdp") {
    if (s.status != optim::Status::Optimal) j["bracket"] = {s.lower, s.upper};
    if (s.P.size() > 0) j["certificate"] = {{"P", to_json(s.P)}, {"E", to_json(s.E)}, {"X", to_json(s.X)}};
  }
  return j;
}

bool fail(ReCheck& c, const std::string& why) {
  c.ok = false;
  if (c.why.empty()) c.why = why;
  return false;
}

// closed forms and SDP certificates; LP values carry no certificate
bool check_sigma(const Graph& g, const json& s, const Tolerance& tol, ReCheck& c) {
  if (s.at("value").is_null()) return true;
  const double val = s.at("value").get<double>();
  const std::string prov = s.at("provenance").get<std::string>();
  const int n = g.n();
  if (prov == "cycle-closed-form") {
    ++c.checked;
    if (!is_cycle(g)) return fail(c, "closed form claimed for a non-cycle");
    double cf = n % 2 == 0 ? 2.0 : 1.0 + std::cos(std::numbers::pi / n);
    return std::abs(cf - val) <= 1e-12 ? true : fail(c, "cycle closed form mismatch");
  }
  if (prov == "srg-closed-form") {
    ++c.checked;
    auto p = srg_params(g);
    if (!p) return fail(c, "graph is not strongly regular");
    return std::abs(srg_sigma(*p) - val) <= 1e-12 ? true : fail(c, "SRG closed form mismatch");
  }
  if (prov != "sdp" || !s.contains("certificate")) return true;
  ++c.checked;
  const json& cj = s.at("certificate");
  const Mat P = mat_from_json(cj.at("P")), E = mat_from_json(cj.at("E")), X = mat_from_json(cj.at("X"));
  const Mat& A = g.adjacency().mat();
  const Mat J = Mat::Ones(n, n);
  if ((J - val * A - P - E).cwiseAbs().maxCoeff() > tol.feas_tol * std::max(1.0, val)) return fail(c, "J - tA != P + E");
  if (min_eig(SymMatrix(P)) < -tol.eig_tol * std::max(1.0, P.norm())) return fail(c, "P not PSD");
  if (E.minCoeff() < -tol.feas_tol) return fail(c, "E has negative entries");
  if (X.size() > 0) {
    if (min_eig(SymMatrix(X)) < -tol.eig_tol * std::max(1.0, X.norm()) || X.minCoeff() < -tol.feas_tol)
      return fail(c, "X not DNN");
    if (std::abs(A.cwiseProduct(X).sum() - 1.0) > tol.feas_tol) return fail(c, "Tr(AX) != 1");
    if (std::abs(X.sum() - val) > 1e-6) return fail(c, "Tr(JX) does not match the value");
  }
  return true;
}

bool check_cone(const SymMatrix& M, const json& vj, ReCheck& c) {
  ConeVerdict v = cone_verdict_from_json(vj);
  if (v.status == Verdict::Unknown) return true;
  ++c.checked;
  std::string why;
  return verify_certificate(M, v, &why) ? true : fail(c, v.cone + ": " + why);
}

bool check_pair(const MatrixPair& p, const json& vj, ReCheck& c) {
  PairVerdict v = pair_verdict_from_json(vj);
  if (v.status == Verdict::Unknown) return true;
  ++c.checked;
  std::string why;
  return verify_pair_certificate(p, v, &why) ? true : fail(c, v.cone + ": " + why);
}

json pair_input(const MatrixPair& p) { return {{"A", to_json(p.A())}, {"B", to_json(p.B().mat())}}; }

}  // namespace

// ---------------------------------------------------------------------------

Outcome cmd_cone_check(const Context& ctx, const ConeArgs& a) {
  Outcome o;
  SymMatrix M = sym_from_json(load_matrix_input(a.in, "M", o.bytes), "M");
  ConeVerdict v;
  const std::string& c = a.cone;
  if (c == "ewp") v = is_ewp(M, ctx.tol);
  else if (c == "psd") v = is_psd_cone(M, ctx.tol);
  else if (c == "dnn") v = is_dnn(M, ctx.tol);
  else if (c == "spn") v = is_spn(M, ctx.tol);
  else if (c == "kr") v = is_kr(M, a.level, ctx.tol);
  else if (c == "cop") v = is_cop(M, ctx.tol, ctx.effort, ctx.seed);
  else if (c == "cp") v = is_cp(M, ctx.tol, ctx.effort, ctx.seed);
  else if (c == "kr-dual") v = in_kr_dual(M, a.level, ctx.tol);
  else throw UsageError("unknown cone '" + c + "'");
  o.input = {{"M", to_json(M.mat())}};
  o.result = to_json(v);
  o.code = exit_code(v.status);
  return o;
}

Outcome cmd_pair_check(const Context& ctx, const PairArgs& a) {
  Outcome o;
  if (a.in.empty()) throw UsageError("missing --in");
  o.bytes = read_text_file(a.in);
  MatrixPair p = pair_from_json(load_json_file(a.in));
  PairVerdict v;
  if (a.cone == "pdec") v = is_pdec(p, ctx.tol);
  else if (a.cone == "copcp") v = is_copcp(p, ctx.tol, ctx.effort, ctx.seed);
  else if (a.cone == "pcp") v = pcp_checks(p, ctx.tol, ctx.effort, ctx.seed);
  else throw UsageError("unknown pair cone '" + a.cone + "'");
  FilterReport f = necessary_filters(p, ctx.tol, ctx.effort, ctx.seed);
  o.input = pair_input(p);
  o.result = to_json(v);
  o.result["filters"] = {{"ewp", to_string(f.ewp)}, {"sym_cop", to_string(f.sym_cop)}, {"entry", to_string(f.entry)}};
  o.result["cldui_plus"] = is_cldui_plus(p, ctx.tol);
  o.result["pdnn"] = is_pdnn(p, ctx.tol);
  o.code = exit_code(v.status);
  return o;
}

Outcome cmd_sigma(const Context& ctx, const GraphArgs& a) {
  Outcome o;
  Graph g = resolve_graph(a.graph, o.bytes);
  if (g.num_edges() == 0) throw UsageError("sigma needs a graph with at least one edge");
  SigmaStrategy st;
  try {
    st = parse_strategy(a.strategy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  SigmaResult s = sigma(g, st, ctx.tol);
  o.input = graph_json(g);
  o.result = sigma_json(s);
  o.result["strategy"] = to_string(st);
  if (a.dual) {
    SigmaDual d = sigma_dual_bound(g, ctx.tol);
    o.result["dual"] = {{"value", std::isfinite(d.value) ? json(d.value) : json(nullptr)},
                        {"status", optim::to_string(d.status)},
                        {"X", to_json(d.X)}};
  }
  o.code = std::isfinite(s.value) ? 0 : 2;
  return o;
}

Outcome cmd_classify_map(const Context& ctx, const GraphArgs& a) {
  Outcome o;
  Graph g = resolve_graph(a.graph, o.bytes);
  if (g.num_edges() == 0) throw UsageError("classify-map needs a graph with at least one edge");
  ThresholdReport t = classify_map(g, ctx.tol);
  o.input = graph_json(g);
  auto val = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  o.result = {{"t_cp", t.t_cp},       {"t_ccp", t.t_ccp},       {"t_dec", val(t.t_dec)},   {"t_pos", t.t_pos},
              {"lambda", t.lambda},   {"omega", t.omega},       {"window", t.window},
              {"provenance", {{"t_cp", t.prov_cp}, {"t_ccp", t.prov_ccp}, {"t_dec", t.prov_dec}, {"t_pos", t.prov_pos}}}};
  o.result["indecomposable_window"] = t.window ? json::array({t.t_dec, t.t_pos}) : json(nullptr);
  o.code = std::isfinite(t.t_dec) ? 0 : 2;
  return o;
}

Outcome cmd_scan_gap(const Context& ctx, const ScanArgs& a) {
  Outcome o;
  if (a.in.empty()) throw UsageError("missing --in");
  o.bytes = read_text_file(a.in);
  std::istringstream in(o.bytes);
  ScanReport r = scan_gap(in, ctx.tol, a.margin, a.threads);
  json recs = json::array(), gaps = json::array(), errs = json::array();
  for (const GapRecord& g : r.records) {
    json j = {{"line", g.line}, {"g6", g.g6},           {"n", g.n},         {"edges", g.edges},
              {"connected", g.connected}, {"sigma", std::isfinite(g.sigma) ? json(g.sigma) : json(nullptr)},
              {"omega", g.omega}, {"gap", g.gap}};
    if (g.gap) gaps.push_back(j);
    if (a.records) recs.push_back(std::move(j));
  }
  for (const ScanError& e : r.errors) errs.push_back({{"line", e.line}, {"message", e.message}});
  o.input = {{"file", a.in}, {"margin", a.margin}};
  o.result = {{"graphs", r.records.size()},
              {"gaps_all", r.gaps(false)},
              {"gaps_connected", r.gaps(true)},
              {"gap_graphs", gaps},
              {"errors", errs}};
  if (a.records) o.result["records"] = recs;
  return o;
}

Outcome cmd_srg_catalog(const Context&, const CatalogArgs& a) {
  Outcome o;
  json list = json::array();
  for (const CatalogEntry& e : catalog_entries()) {
    if (!a.name.empty() && e.name != catalog(a.name).name()) continue;
    Graph g = catalog(e.name);
    json j = {{"name", e.name}, {"description", e.description}, {"rank3", e.rank3}, {"g6", encode_graph6(g)},
              {"n", g.n()}, {"omega", clique_number(g)}};
    if (e.params) {
      const SrgParams& p = *e.params;
      j["params"] = {{"n", p.n}, {"k", p.k}, {"lambda", p.lambda}, {"mu", p.mu}, {"r", p.r()}, {"s", p.s()}};
      const double sg = srg_sigma(p);
      j["sigma"] = sg;
      j["gap"] = sg < 1.0 + 1.0 / (j["omega"].get<int>() - 1) - 1e-7;
    }
    list.push_back(std::move(j));
  }
  if (list.empty()) throw UsageError("'" + a.name + "' is not a catalog entry");
  o.bytes = a.name;
  o.input = {{"name", a.name}};
  o.result = {{"entries", list}, {"rank3_table", rank3_table()}};
  return o;
}

Outcome cmd_dicke_ext(const Context& ctx, const DickeArgs& a) {
  Outcome o;
  if (a.search > 0) {
    ExtendibleEntangled e = find_extendible_entangled(a.search, a.r, ctx.tol);
    o.bytes = std::to_string(a.search) + "/" + std::to_string(a.r);
    o.input = {{"P", to_json(e.P.mat())}, {"r", a.r}, {"search", a.search}};
    o.result = {{"s", e.s},
                {"extendible", to_json(e.extendible)},
                {"separable", to_json(e.separable)},
                {"witness_value", e.witness_value}};
    return o;
  }
  SymMatrix P = sym_from_json(load_matrix_input(a.P, "P", o.bytes), "P");
  ConeVerdict v = dicke_extendibility(P, a.r, ctx.tol);
  DickeClass dc = dicke_class(P, ctx.tol, ctx.effort, ctx.seed);
  o.input = {{"P", to_json(P.mat())}, {"r", a.r}};
  o.result = to_json(v);
  o.result["class"] = {{"psd", dc.psd}, {"ppt", dc.ppt}, {"separable", to_json(dc.separable)}};
  o.code = exit_code(v.status);
  return o;
}

Outcome cmd_witness(const Context& ctx, const WitnessArgs& a) {
  Outcome o;
  SymMatrix M = sym_from_json(load_matrix_input(a.M, "M", o.bytes), "M");
  SymMatrix N = sym_from_json(load_matrix_input(a.N, "N", o.bytes), "N");
  int level;
  if (a.level == "cop")
    level = -1;
  else
    try {
      level = std::stoi(a.level);
    } catch (const std::exception&) {
      throw UsageError("--level must be 0, 1, 2 or cop");
    }
  Witness w = witness_from_cop(M, N, level, ctx.tol, ctx.effort, ctx.seed);
  o.input = {{"M", to_json(M.mat())}, {"N", to_json(N.mat())}};
  o.result = {{"cone_level", level < 0 ? json("cop") : json(level)},
              {"extendibility_level", w.level < 0 ? json(nullptr) : json(w.level)},
              {"membership", to_json(w.membership)},
              {"pair", pair_input(w.pair)},
              {"choi_nonzeros", w.X.X.nonZeros()},
              {"index_convention", "(i,j) -> i*n + j"}};
  if (a.choi) o.result["choi"] = to_json(w.X.dense());
  if (!a.eval.empty()) {
    SymMatrix P = sym_from_json(load_matrix_input(a.eval, "P", o.bytes), "P");
    const double val = w.evaluate(P);
    o.input["P"] = to_json(P.mat());
    o.result["evaluation"] = {{"value", val}, {"detects", val < -ctx.tol.feas_tol}};
  }
  return o;
}

Outcome cmd_markov_choi(const Context& ctx, const MarkovArgs& a) {
  Outcome o;
  Mat A = mat_from_json(load_matrix_input(a.A, "A", o.bytes));
  if (A.rows() == 0 || A.rows() != A.cols()) throw UsageError("A must be a non-empty square matrix");
  MarkovChoiReport r = markov_choi_check(A, ctx.tol, ctx.effort, ctx.seed);
  o.input = {{"A", to_json(A)}};
  o.result = to_json(r.verdict);
  o.result["g_max"] = r.g_max;
  o.result["t"] = to_json(r.t);
  o.result["cldui_plus"] = r.cldui_plus;
  o.result["pdnn"] = r.pdnn;
  o.code = exit_code(r.verdict.status);
  return o;
}

// ---------------------------------------------------------------------------

ReCheck verify_report(const json& rep) {
  ReCheck c;
  try {
    if (rep.value("schema", 0) != 1) {
      fail(c, "unsupported report schema");
      return c;
    }
    const std::string cmd = rep.at("command").get<std::string>();
    const json& in = rep.at("input");
    const json& res = rep.at("result");
    const Tolerance tol = tol_from_json(rep.at("tol"));
    if (cmd == "cone-check") {
      check_cone(sym_from_json(in.at("M"), "M"), res, c);
    } else if (cmd == "pair-check") {
      check_pair(pair_from_json(in), res, c);
    } else if (cmd == "sigma") {
      check_sigma(graph_from_input(in), res, tol, c);
    } else if (cmd == "classify-map") {
      Graph g = graph_from_input(in);
      ++c.checked;
      if (clique_number(g) != res.at("omega").get<int>()) fail(c, "clique number mismatch");
      if (std::abs(lambda_max(g) - res.at("lambda").get<double>()) > 1e-9) fail(c, "lambda mismatch");
      json s = {{"value", res.at("t_dec")}, {"provenance", res.at("provenance").at("t_dec")}};
      check_sigma(g, s, tol, c);
    } else if (cmd == "srg-catalog") {
      for (const json& e : res.at("entries")) {
        if (!e.contains("params")) continue;
        ++c.checked;
        auto p = srg_params(decode_graph6(e.at("g6").get<std::string>()));
        if (!p || p->k != e.at("params").at("k").get<int>() || p->lambda != e.at("params").at("lambda").get<int>() ||
            p->mu != e.at("params").at("mu").get<int>())
          fail(c, e.at("name").get<std::string>() + ": SRG parameters do not hold");
      }
    } else if (cmd == "dicke-ext") {
      SymMatrix P = sym_from_json(in.at("P"), "P");
      if (in.contains("search")) {
        check_cone(P, res.at("extendible"), c);
        check_cone(P, res.at("separable"), c);
      } else {
        check_cone(P, res, c);
        check_cone(P, res.at("class").at("separable"), c);
      }
    } else if (cmd == "witness") {
      check_cone(sym_from_json(in.at("M"), "M"), res.at("membership"), c);
      if (in.contains("P")) {
        ++c.checked;
        const double v = inner(sym_from_json(in.at("P"), "P"), sym_from_json(in.at("M"), "M"));
        if (std::abs(v - res.at("evaluation").at("value").get<double>()) > 1e-9) fail(c, "evaluation mismatch");
      }
    } else if (cmd == "markov-choi") {
      Mat A = mat_from_json(in.at("A"));
      CMat B = -CMat::Ones(A.rows(), A.rows());
      for (int i = 0; i < A.rows(); ++i) B(i, i) = A(i, i);
      check_pair(MatrixPair(A, HermMatrix(B)), res, c);
    } else if (cmd != "scan-gap") {
      fail(c, "unknown command '" + cmd + "'");
    }
  } catch (const std::exception& e) {
    fail(c, std::string("malformed report: ") + e.what());
  }
  return c;
}

}  // namespace copcp::cli
