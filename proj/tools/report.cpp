#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace copcp::cli {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double num_of(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

Mat rows_of(const json& j) {
  if (!j.is_array()) throw UsageError("matrix must be an array of rows");
  if (j.empty()) return Mat(0, 0);
  const int r = static_cast<int>(j.size());
  const int c = static_cast<int>(j[0].size());
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c) throw UsageError("matrix rows have unequal length");
    for (int k = 0; k < c; ++k) {
      if (!j[i][k].is_number() && !j[i][k].is_null()) throw UsageError("matrix entries must be numbers");
      m(i, k) = num_of(j[i][k]);
    }
  }
  return m;
}

Verdict verdict_of(const std::string& s) {
  if (s == "MEMBER") return Verdict::Member;
  if (s == "NON_MEMBER") return Verdict::NonMember;
  return Verdict::Unknown;
}

CertKind kind_of(const std::string& s) {
  for (CertKind k : {CertKind::None, CertKind::Decomposition, CertKind::Factorization, CertKind::ViolatingVector,
                     CertKind::DualWitness, CertKind::SosGram, CertKind::Moments, CertKind::Theorem})
    if (s == to_string(k)) return k;
  throw UsageError("unknown certificate kind '" + s + "'");
}

}  // namespace

json to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(num(m(i, k)));
    rows.push_back(std::move(row));
  }
  json j = {{"n", m.rows()}, {"real", std::move(rows)}};
  if (m.rows() != m.cols()) j["cols"] = m.cols();
  return j;
}

json to_json(const CMat& m) {
  json j = {{"n", m.rows()}, {"re", to_json(Mat(m.real())).at("real")}, {"im", to_json(Mat(m.imag())).at("real")}};
  if (m.rows() != m.cols()) j["cols"] = m.cols();
  return j;
}

json to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json to_json(const CVec& v) { return {{"re", to_json(Vec(v.real()))}, {"im", to_json(Vec(v.imag()))}}; }

json to_json(const Tolerance& t) { return {{"eig_tol", t.eig_tol}, {"feas_tol", t.feas_tol}}; }

namespace {

void check_n(const json& j, const Mat& m) {
  if (j.contains("n") && j.at("n").get<long>() != m.rows()) throw UsageError("matrix \"n\" does not match its rows");
}

}  // namespace

// accepts a bare array of rows, {"n", "real"} or {"n", "re", "im"}
Mat mat_from_json(const json& j) {
  if (j.is_array()) return rows_of(j);
  if (j.is_object() && j.contains("real")) {
    Mat m = rows_of(j.at("real"));
    check_n(j, m);
    return m;
  }
  if (j.is_object() && j.contains("re")) {
    CMat c = cmat_from_json(j);
    if (c.size() > 0 && c.imag().cwiseAbs().maxCoeff() != 0.0) throw UsageError("expected a real matrix");
    return c.real();
  }
  throw UsageError("matrix must be an array of rows or an object with \"real\"");
}

CMat cmat_from_json(const json& j) {
  if (j.is_array() || (j.is_object() && j.contains("real"))) return mat_from_json(j).cast<cplx>();
  if (!j.is_object() || !j.contains("re")) throw UsageError("complex matrix needs \"re\" (and optionally \"im\")");
  Mat re = rows_of(j.at("re"));
  check_n(j, re);
  Mat im = j.contains("im") ? rows_of(j.at("im")) : Mat::Zero(re.rows(), re.cols());
  if (im.rows() != re.rows() || im.cols() != re.cols()) throw UsageError("re/im parts differ in shape");
  CMat m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw UsageError("vector must be an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = num_of(j[i]);
  return v;
}

CVec cvec_from_json(const json& j) {
  if (j.is_array()) return vec_from_json(j).cast<cplx>();
  Vec re = vec_from_json(j.at("re"));
  Vec im = j.contains("im") ? vec_from_json(j.at("im")) : Vec::Zero(re.size());
  CVec v(re.size());
  v.real() = re;
  v.imag() = im;
  return v;
}

Tolerance tol_from_json(const json& j) {
  Tolerance t;
  t.eig_tol = j.at("eig_tol").get<double>();
  t.feas_tol = j.at("feas_tol").get<double>();
  return t;
}

json to_json(const ConeVerdict& v) {
  json c = {{"kind", to_string(v.cert.kind)}, {"value", num(v.cert.value)}, {"note", v.cert.note},
            {"level", v.cert.level}};
  json parts = json::array();
  for (const Mat& p : v.cert.parts) parts.push_back(to_json(p));
  c["parts"] = parts;
  c["witness"] = to_json(v.cert.witness);
  c["vector"] = to_json(v.cert.vector);
  c["index"] = v.cert.index;
  json out = {{"status", to_string(v.status)}, {"cone", v.cone}, {"route", v.route}};
  out["level"] = v.level ? json(*v.level) : json(nullptr);
  out["tol"] = to_json(v.tol);
  out["certificate"] = std::move(c);
  return out;
}

ConeVerdict cone_verdict_from_json(const json& j) {
  ConeVerdict v;
  v.status = verdict_of(j.at("status").get<std::string>());
  v.cone = j.at("cone").get<std::string>();
  v.route = j.value("route", "");
  if (j.contains("level") && !j.at("level").is_null()) v.level = j.at("level").get<int>();
  v.tol = tol_from_json(j.at("tol"));
  const json& c = j.at("certificate");
  v.cert.kind = kind_of(c.at("kind").get<std::string>());
  v.cert.value = num_of(c.at("value"));
  v.cert.note = c.value("note", "");
  v.cert.level = c.value("level", -1);
  for (const json& p : c.at("parts")) v.cert.parts.push_back(mat_from_json(p));
  v.cert.witness = mat_from_json(c.at("witness"));
  v.cert.vector = vec_from_json(c.at("vector"));
  v.cert.index = c.at("index").get<std::vector<int>>();
  return v;
}

json to_json(const PairVerdict& v) {
  const PairCertificate& c = v.cert;
  json cj = {{"kind", c.kind}, {"value", num(c.value)}, {"note", c.note}, {"shift", num(c.shift)}, {"lambda", num(c.lambda)}};
  cj["v"] = to_json(c.v);
  cj["w"] = to_json(c.w);
  cj["B1"] = to_json(c.B1.mat());
  cj["B2"] = to_json(c.B2.mat());
  cj["Y"] = to_json(c.Y);
  cj["N"] = to_json(c.N.mat());
  cj["W"] = to_json(c.W);
  cj["weights"] = to_json(c.weights);
  json atoms = json::array();
  for (const auto& [a, b] : c.atoms) atoms.push_back({{"v", to_json(a)}, {"w", to_json(b)}});
  cj["atoms"] = std::move(atoms);
  cj["base"] = c.base ? to_json(*c.base) : json(nullptr);
  return {{"status", to_string(v.status)}, {"cone", v.cone}, {"route", v.route}, {"tol", to_json(v.tol)}, {"certificate", cj}};
}

PairVerdict pair_verdict_from_json(const json& j) {
  PairVerdict v;
  v.status = verdict_of(j.at("status").get<std::string>());
  v.cone = j.at("cone").get<std::string>();
  v.route = j.value("route", "");
  v.tol = tol_from_json(j.at("tol"));
  const json& cj = j.at("certificate");
  PairCertificate& c = v.cert;
  c.kind = cj.at("kind").get<std::string>();
  c.value = num_of(cj.at("value"));
  c.note = cj.value("note", "");
  c.shift = num_of(cj.at("shift"));
  c.lambda = num_of(cj.at("lambda"));
  c.v = cvec_from_json(cj.at("v"));
  c.w = cvec_from_json(cj.at("w"));
  CMat b1 = cmat_from_json(cj.at("B1")), b2 = cmat_from_json(cj.at("B2"));
  if (b1.size() > 0) c.B1 = HermMatrix(b1);
  if (b2.size() > 0) c.B2 = HermMatrix(b2);
  c.Y = cmat_from_json(cj.at("Y"));
  Mat N = mat_from_json(cj.at("N"));
  if (N.size() > 0) c.N = SymMatrix(N);
  c.W = mat_from_json(cj.at("W"));
  c.weights = vec_from_json(cj.at("weights"));
  for (const json& a : cj.at("atoms")) c.atoms.emplace_back(cvec_from_json(a.at("v")), cvec_from_json(a.at("w")));
  if (!cj.at("base").is_null()) c.base = cone_verdict_from_json(cj.at("base"));
  return v;
}

SymMatrix sym_from_json(const json& j, const std::string& what) {
  Mat m = mat_from_json(j);
  if (m.rows() == 0 || m.rows() != m.cols()) throw UsageError(what + ": expected a non-empty square matrix");
  if (!m.allFinite()) throw UsageError(what + ": entries must be finite");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw UsageError(what + ": matrix is not symmetric");
  return SymMatrix(m);
}

MatrixPair pair_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) throw UsageError("pair input needs \"A\" and \"B\"");
  Mat A = mat_from_json(j.at("A"));
  CMat B = cmat_from_json(j.at("B"));
  if (B.rows() == 0 || B.rows() != B.cols()) throw UsageError("B must be a non-empty square matrix");
  const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  if ((B - B.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw UsageError("B is not Hermitian");
  return MatrixPair(A, HermMatrix(B));
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Member: return 0;
    case Verdict::NonMember: return 1;
    default: return 2;
  }
}

}  // namespace copcp::cli
