#include "copcp/graph6.hpp"

#include <cctype>
#include <stdexcept>

namespace copcp {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";

int byte_at(const std::string& s, std::size_t i) {
  if (i >= s.size()) throw std::invalid_argument("graph6: record truncated");
  int c = static_cast<unsigned char>(s[i]);
  if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte out of range");
  return c - 63;
}

}  // namespace

Graph decode_graph6(const std::string& raw) {
  std::string s = raw;
  if (s.rfind(kHeader, 0) == 0) s.erase(0, kHeader.size());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("graph6: empty record");
  if (s[0] == ':' || s[0] == '&') throw std::invalid_argument("graph6: sparse6/digraph6 records are not supported");

  std::size_t pos = 0;
  long n = byte_at(s, 0);
  pos = 1;
  if (n == 63) {
    if (byte_at(s, 1) == 63) {
      n = 0;
      for (std::size_t k = 2; k < 8; ++k) n = (n << 6) | byte_at(s, k);
      pos = 8;
    } else {
      n = 0;
      for (std::size_t k = 1; k < 4; ++k) n = (n << 6) | byte_at(s, k);
      pos = 4;
    }
  }
  if (n < 1) throw std::invalid_argument("graph6: graph must have at least one vertex");
  if (n > 4096) throw SizeLimit("graph6: more than 4096 vertices");

  const long bits = n * (n - 1) / 2;
  const std::size_t need = pos + static_cast<std::size_t>((bits + 5) / 6);
  if (s.size() != need)
    throw std::invalid_argument("graph6: expected " + std::to_string(need) + " bytes, got " + std::to_string(s.size()));

  Graph g(static_cast<int>(n));
  long k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int b = byte_at(s, pos + static_cast<std::size_t>(k / 6));
      if ((b >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  // padding bits must be zero
  if (k % 6 != 0) {
    int b = byte_at(s, need - 1);
    if (b & ((1 << (6 - k % 6)) - 1)) throw std::invalid_argument("graph6: nonzero padding");
  }
  return g;
}

std::string encode_graph6(const Graph& g) {
  const long n = g.n();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int sh = 12; sh >= 0; sh -= 6) out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int sh = 30; sh >= 0; sh -= 6) out.push_back(static_cast<char>(((n >> sh) & 63) + 63));
  }
  int acc = 0, nb = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nb == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nb = 0;
      }
    }
  if (nb) out.push_back(static_cast<char>((acc << (6 - nb)) + 63));
  return out;
}

}  // namespace copcp
