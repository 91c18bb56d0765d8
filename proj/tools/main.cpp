#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

using namespace copcp;
using namespace copcp::cli;

namespace {

constexpr int kUsage = 64;

int emit(const json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write '" << out << "'\n";
    return kUsage;
  }
  f << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"copcp: copositive, pairwise and graph-map cone oracles"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  double feas_tol = ctx.tol.feas_tol, eig_tol = ctx.tol.eig_tol;
  std::string out;
  app.add_option("--seed", ctx.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", feas_tol, "feasibility tolerance")->capture_default_str();
  app.add_option("--eig-tol", eig_tol, "eigenvalue tolerance")->capture_default_str();
  app.add_option("--effort", ctx.effort_name, "fast | default | thorough")
      ->check(CLI::IsMember({"fast", "default", "thorough"}))
      ->capture_default_str();
  app.add_option("--out", out, "write the report here instead of stdout");

  std::string verify_path;
  std::function<Outcome()> run;
  std::string command;

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--verify", verify_path, "re-check certificates; with FILE, check a saved report")->expected(0, 1);
    return s;
  };

  ConeArgs cone;
  CLI::App* s = sub("cone-check", "membership of a symmetric matrix in a cone");
  s->add_option("--cone", cone.cone, "ewp | psd | dnn | spn | kr | cop | cp | kr-dual")->capture_default_str();
  s->add_option("--in", cone.in, "matrix JSON");
  s->add_option("--level", cone.level, "hierarchy level for kr and kr-dual")->capture_default_str();
  s->callback([&] { command = "cone-check"; run = [&] { return cmd_cone_check(ctx, cone); }; });

  PairArgs pair;
  s = sub("pair-check", "membership of a matrix pair (A, B)");
  s->add_option("--cone", pair.cone, "pdec | copcp | pcp")->capture_default_str();
  s->add_option("--in", pair.in, "pair JSON {\"A\": ..., \"B\": ...}");
  s->callback([&] { command = "pair-check"; run = [&] { return cmd_pair_check(ctx, pair); }; });

  GraphArgs gs;
  s = sub("sigma", "sigma(G) = max{t : J - t A_G in SPN}");
  s->add_option("--graph", gs.graph, "catalog name, g6:<record> or edge-list file");
  s->add_option("--strategy", gs.strategy, "auto | sdp | twirl | circulant | srg3")->capture_default_str();
  s->add_flag("--dual", gs.dual, "also solve the dual DNN program");
  s->callback([&] { command = "sigma"; run = [&] { return cmd_sigma(ctx, gs); }; });

  GraphArgs gc;
  s = sub("classify-map", "thresholds of the graph map family");
  s->add_option("--graph", gc.graph, "catalog name, g6:<record> or edge-list file");
  s->callback([&] { command = "classify-map"; run = [&] { return cmd_classify_map(ctx, gc); }; });

  ScanArgs scan;
  s = sub("scan-gap", "graphs with sigma(G) < 1 + 1/(omega(G) - 1)");
  s->add_option("--in", scan.in, "graph6 file");
  s->add_option("--threads", scan.threads, "worker threads (0 = hardware)")->capture_default_str();
  s->add_option("--margin", scan.margin, "gap margin")->capture_default_str();
  s->add_flag("!--no-records", scan.records, "omit per-graph records");
  s->callback([&] { command = "scan-gap"; run = [&] { return cmd_scan_gap(ctx, scan); }; });

  CatalogArgs cat;
  s = sub("srg-catalog", "named graphs and the rank-3 table");
  s->add_flag("--list", cat.list, "list every entry (default)");
  s->add_option("--name", cat.name, "show one entry");
  s->callback([&] { command = "srg-catalog"; run = [&] { return cmd_srg_catalog(ctx, cat); }; });

  DickeArgs dk;
  s = sub("dicke-ext", "K_r-PPT bosonic extendibility of a Dicke state");
  s->add_option("--P", dk.P, "parameter matrix JSON");
  s->add_option("--r", dk.r, "extension level (2..4)")->capture_default_str();
  s->add_option("--search", dk.search, "search an extendible entangled P of this size instead");
  s->callback([&] { command = "dicke-ext"; run = [&] { return cmd_dicke_ext(ctx, dk); }; });

  WitnessArgs wt;
  s = sub("witness", "LDUI witness X_{N, M - N_off} from a copositive M");
  s->add_option("--M", wt.M, "matrix JSON");
  s->add_option("--N", wt.N, "matrix JSON with diag(N) = diag(M)");
  s->add_option("--level", wt.level, "0 | 1 | 2 | cop")->capture_default_str();
  s->add_option("--eval", wt.eval, "Dicke parameter matrix to evaluate");
  s->add_flag("--choi", wt.choi, "include the dense Choi matrix");
  s->callback([&] { command = "witness"; run = [&] { return cmd_witness(ctx, wt); }; });

  MarkovArgs mk;
  s = sub("markov-choi", "COPCP test for (A, diag(A) - J_off)");
  s->add_option("--A", mk.A, "non-negative matrix JSON");
  s->callback([&] { command = "markov-choi"; run = [&] { return cmd_markov_choi(ctx, mk); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  bool verify_flag = false;
  for (CLI::App* sc : app.get_subcommands())
    if (sc->count("--verify")) verify_flag = true;

  if (verify_flag && !verify_path.empty()) {
    try {
      json rep = load_json_file(verify_path);
      ReCheck c = verify_report(rep);
      json r = {{"schema", 1}, {"command", "verify"}, {"report", verify_path}, {"ok", c.ok}, {"checked", c.checked}};
      if (!c.ok) r["why"] = c.why;
      if (int e = emit(r, out)) return e;
      return c.ok ? 0 : 1;
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }

  ctx.tol.feas_tol = feas_tol;
  ctx.tol.eig_tol = eig_tol;
  try {
    ctx.tol.validate();
    ctx.effort = parse_effort(ctx.effort_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  json report = {{"schema", 1}, {"command", command}};
  json args = json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  report["args"] = args;
  report["seed"] = ctx.seed;
  report["tol"] = to_json(ctx.tol);
  report["effort"] = ctx.effort_name;

  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    o.code = 2;
    o.result = {{"error", e.what()}};
  }
  report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report["inputs_digest"] = digest(o.bytes);
  report["input"] = o.input;
  report["result"] = o.result;
  report["exit_code"] = o.code;

  if (verify_flag) {
    // round-trip through text so the check only sees what a reader of the report would
    ReCheck c = verify_report(json::parse(report.dump()));
    report["verification"] = {{"ok", c.ok}, {"checked", c.checked}};
    if (!c.ok) report["verification"]["why"] = c.why;
  }
  if (int e = emit(report, out)) return e;
  return o.code;
}
