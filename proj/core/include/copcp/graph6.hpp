#pragma once

#include <string>

#include "copcp/graphs.hpp"

namespace copcp {

// graph6 record (optional ">>graph6<<" header and trailing whitespace tolerated)
Graph decode_graph6(const std::string& line);
std::string encode_graph6(const Graph& g);

}  // namespace copcp
