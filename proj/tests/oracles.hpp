#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

namespace testdata {

inline std::string path(const std::string& name) { return std::string(COPCP_TEST_DATA) + "/" + name; }

// reference values produced by tests/oracles/gen_oracles.py (cvxpy + networkx)
inline const nlohmann::json& oracles() {
  static const nlohmann::json j = [] {
    std::ifstream in(path("oracles.json"));
    return nlohmann::json::parse(in);
  }();
  return j;
}

}  // namespace testdata
