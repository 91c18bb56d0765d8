#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "commands.hpp"
#include "copcp/catalog.hpp"
#include "copcp/graph6.hpp"

using namespace copcp;
using namespace copcp::cli;

namespace {

std::string scratch(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "copcp_test_cli";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

json report(const Context& ctx, const std::string& command, const Outcome& o) {
  return {{"schema", 1}, {"command", command}, {"tol", to_json(ctx.tol)}, {"input", o.input}, {"result", o.result}};
}

std::string horn_json() { return json{{"n", 5}, {"real", to_json(horn().mat()).at("real")}}.dump(); }

}  // namespace

TEST_CASE("matrix JSON accepts every documented shape") {
  Mat m = mat_from_json(json::parse(R"([[1, 2], [2, 1]])"));
  CHECK(m(0, 1) == 2.0);
  m = mat_from_json(json::parse(R"({"n": 2, "real": [[1, 0], [0, 1]]})"));
  CHECK(m(1, 1) == 1.0);
  CMat c = cmat_from_json(json::parse(R"({"n": 2, "re": [[1, 0], [0, 1]], "im": [[0, 1], [-1, 0]]})"));
  CHECK(c(0, 1) == cplx(0, 1));
  CHECK_THROWS_AS(mat_from_json(json::parse(R"({"n": 3, "real": [[1]]})")), UsageError);
  CHECK_THROWS_AS(mat_from_json(json::parse(R"([[1, 2], [3]])")), UsageError);
  CHECK_THROWS_AS(sym_from_json(json::parse(R"([[1, 2], [3, 1]])"), "M"), UsageError);
  CHECK_THROWS_AS(pair_from_json(json::parse(R"({"A": [[1]]})")), UsageError);
  CHECK(to_json(CVec(CVec::Ones(2))).contains("im"));
}

TEST_CASE("malformed JSON reports line and column") {
  const std::string path = scratch("bad.json", "{\n  \"n\": 2,\n  \"real\": [[1, 2],, [2, 1]]\n}\n");
  try {
    load_json_file(path);
    FAIL("expected a UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
}

TEST_CASE("digest is stable FNV-1a") {
  CHECK(digest("") == "fnv1a:cbf29ce484222325");
  CHECK(digest("a") == "fnv1a:af63dc4c8601ec8c");
  CHECK(digest("abc") != digest("acb"));
}

TEST_CASE("verdict JSON round trip keeps the certificate checkable") {
  SymMatrix H = horn();
  ConeVerdict v = is_spn(H);
  ConeVerdict back = cone_verdict_from_json(json::parse(to_json(v).dump()));
  CHECK(back.status == v.status);
  CHECK(back.cert.kind == v.cert.kind);
  CHECK(verify_certificate(H, back));

  MatrixPair p(Mat::Ones(3, 3), HermMatrix(SymMatrix::identity(3)));
  PairVerdict pv = is_pdec(p);
  PairVerdict pb = pair_verdict_from_json(json::parse(to_json(pv).dump()));
  CHECK(verify_pair_certificate(p, pb));
}

TEST_CASE("cone-check on the Horn matrix") {
  Context ctx;
  ConeArgs a;
  a.in = scratch("horn.json", horn_json());
  a.cone = "spn";
  Outcome o = cmd_cone_check(ctx, a);
  CHECK(o.code == 1);
  CHECK(o.result["status"] == "NON_MEMBER");
  ReCheck r = verify_report(json::parse(report(ctx, "cone-check", o).dump()));
  CHECK(r.ok);
  CHECK(r.checked == 1);

  a.cone = "cop";
  o = cmd_cone_check(ctx, a);
  CHECK(o.code == 0);
  CHECK(o.result["level"] == 1);
  CHECK(verify_report(report(ctx, "cone-check", o)).ok);

  a.cone = "nonsense";
  CHECK_THROWS_AS(cmd_cone_check(ctx, a), UsageError);
}

TEST_CASE("a tampered report fails verification") {
  Context ctx;
  ConeArgs a;
  a.in = scratch("horn.json", horn_json());
  a.cone = "spn";
  json rep = report(ctx, "cone-check", cmd_cone_check(ctx, a));
  rep["input"]["M"]["real"][0][0] = 3.0;
  CHECK_FALSE(verify_report(rep).ok);
  rep["schema"] = 2;
  CHECK_FALSE(verify_report(rep).ok);
}

TEST_CASE("sigma and classify-map by name, graph6 and edge list") {
  Context ctx;
  GraphArgs g;
  g.graph = "petersen";
  Outcome o = cmd_sigma(ctx, g);
  CHECK(o.code == 0);
  CHECK(o.result["provenance"] == "srg-closed-form");
  CHECK(o.result["value"].get<double>() == doctest::Approx(5.0 / 3));
  CHECK(verify_report(report(ctx, "sigma", o)).ok);

  g.graph = "g6:Ehfw";
  g.dual = true;
  o = cmd_sigma(ctx, g);
  CHECK(o.result["provenance"] == "sdp");
  CHECK(o.result["dual"]["value"].get<double>() == doctest::Approx(1 + 1 / std::sqrt(5.0)).epsilon(1e-7));
  ReCheck r = verify_report(json::parse(report(ctx, "sigma", o).dump()));
  CHECK(r.ok);
  CHECK(r.checked == 1);

  g.graph = scratch("c5.txt", "5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
  g.dual = false;
  o = cmd_classify_map(ctx, g);
  CHECK(o.result["t_cp"].get<double>() == doctest::Approx(0.5));
  CHECK(o.result["t_dec"].get<double>() == doctest::Approx(1.809017).epsilon(1e-6));
  CHECK(o.result["t_pos"].get<double>() == doctest::Approx(2.0));
  CHECK(verify_report(report(ctx, "classify-map", o)).ok);

  g.graph = scratch("bad.txt", "3\n0 1\n1 1\n");
  CHECK_THROWS_AS(cmd_sigma(ctx, g), UsageError);
  g.graph = "g6:I?";
  CHECK_THROWS_AS(cmd_sigma(ctx, g), UsageError);
}

TEST_CASE("catalog, pair-check and markov-choi reports verify") {
  Context ctx;
  Outcome o = cmd_srg_catalog(ctx, CatalogArgs{true, ""});
  ReCheck r = verify_report(report(ctx, "srg-catalog", o));
  CHECK(r.ok);
  CHECK(r.checked >= 12);

  PairArgs pa;
  pa.in = scratch("pair.json", R"({"A": [[1, 1], [1, 1]], "B": [[1, 0.5], [0.5, 1]]})");
  o = cmd_pair_check(ctx, pa);
  CHECK(o.code == 0);
  CHECK(verify_report(report(ctx, "pair-check", o)).ok);

  MarkovArgs ma;
  ma.A = scratch("a.json", json{{"A", to_json(Mat(Mat::Constant(4, 4, 0.6))).at("real")}}.dump());
  o = cmd_markov_choi(ctx, ma);
  CHECK(o.code == 1);
  CHECK(verify_report(report(ctx, "markov-choi", o)).ok);
}

TEST_CASE("witness and dicke-ext reports verify") {
  Context ctx;
  WitnessArgs w;
  w.M = scratch("horn.json", horn_json());
  SymMatrix N(Mat(horn().mat().cwiseMax(0.0)));
  w.N = scratch("n.json", to_json(N.mat()).dump());
  w.level = "1";
  w.eval = scratch("berman.json", to_json(berman_dnn().mat()).dump());
  Outcome o = cmd_witness(ctx, w);
  CHECK(o.result["evaluation"]["value"].get<double>() == doctest::Approx(inner(berman_dnn(), horn())));
  CHECK(verify_report(report(ctx, "witness", o)).ok);

  DickeArgs d;
  d.P = w.eval;
  d.r = 2;
  o = cmd_dicke_ext(ctx, d);
  CHECK(o.code == 0);
  CHECK(verify_report(report(ctx, "dicke-ext", o)).ok);
}
