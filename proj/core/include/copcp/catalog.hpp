#pragma once

#include <optional>
#include <string>
#include <vector>

#include "copcp/graphs.hpp"

namespace copcp {

struct CatalogEntry {
  std::string name;
  std::string description;
  bool rank3 = false;
  std::optional<SrgParams> params;
};

// named graphs; names resolve case-insensitively, plus c<n>, k<n>, paley<q>
Graph catalog(const std::string& name);
std::vector<CatalogEntry> catalog_entries();
// the rank-3 SRGs on at most 17 vertices, in table order
std::vector<std::string> rank3_table();

// quadratic-residue graph; q prime with q = 1 mod 4, or q = 9
Graph paley(int q);
Graph cycle_graph(int n);
Graph complete_graph(int n);

}  // namespace copcp
