#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "copcp/cones.hpp"
#include "copcp/pairwise.hpp"

namespace copcp::cli {

using json = nlohmann::ordered_json;

// exit code 64
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
std::string digest(const std::string& bytes);

json to_json(const Mat& m);
json to_json(const CMat& m);
json to_json(const Vec& v);
json to_json(const CVec& v);
json to_json(const Tolerance& t);
json to_json(const ConeVerdict& v);
json to_json(const PairVerdict& v);

Mat mat_from_json(const json& j);
CMat cmat_from_json(const json& j);
Vec vec_from_json(const json& j);
CVec cvec_from_json(const json& j);
Tolerance tol_from_json(const json& j);
ConeVerdict cone_verdict_from_json(const json& j);
PairVerdict pair_verdict_from_json(const json& j);

// square symmetric input within 1e-12 relative asymmetry
SymMatrix sym_from_json(const json& j, const std::string& what);
// {"A": real, "B": real or {"re","im"}}
MatrixPair pair_from_json(const json& j);

int exit_code(Verdict v);

}  // namespace copcp::cli
