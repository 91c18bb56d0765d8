#include "copcp/catalog.hpp"

#include <bit>
#include <cctype>
#include <functional>
#include <map>

namespace copcp {

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

// GF(9) = F_3[i], vertex 3a + b for a + b*i
const std::vector<std::pair<int, int>> kPaley9 = {{0, 1}, {0, 2}, {0, 3}, {0, 6}, {1, 2}, {1, 4}, {1, 7}, {2, 5}, {2, 8},
                                                  {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}};

Graph named(Graph g, const std::string& name) {
  g.set_name(name);
  return g;
}

Graph kneser52() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
  Graph g(10);
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if (a != c && a != d && b != c && b != d) g.add_edge(i, j);
    }
  return g;
}

// line graph of K_m
Graph triangular(int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  const int n = static_cast<int>(pairs.size());
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if (a == c || a == d || b == c || b == d) g.add_edge(i, j);
    }
  return g;
}

Graph clebsch() {
  Graph g(16);
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j) {
      int d = std::popcount(static_cast<unsigned>(i ^ j));
      if (d == 1 || d == 4) g.add_edge(i, j);
    }
  return g;
}

Graph torus_graph(const std::vector<std::pair<int, int>>& diffs) {
  Graph g(16);
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j) {
      int dx = ((j / 4) - (i / 4) + 4) % 4, dy = ((j % 4) - (i % 4) + 4) % 4;
      for (auto [a, b] : diffs)
        if (dx == (a + 4) % 4 && dy == (b + 4) % 4) {
          g.add_edge(i, j);
          break;
        }
    }
  return g;
}

Graph shrikhande() { return torus_graph({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}); }

Graph rook44() {
  Graph g(16);
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j)
      if (i / 4 == j / 4 || i % 4 == j % 4) g.add_edge(i, j);
  return g;
}

Graph wheel6() {
  Graph g = cycle_graph(5).disjoint_union(Graph(1));
  for (int i = 0; i < 5; ++i) g.add_edge(i, 5);
  return g;
}

Graph tadpole51() {
  Graph g = cycle_graph(5).disjoint_union(Graph(1));
  g.add_edge(0, 5);
  return g;
}

// C_4 with a path 0-4-5 hanging off one corner and closing on the opposite side
Graph square_path() { return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 2}}); }

struct Builder {
  std::string description;
  bool rank3;
  std::function<Graph()> make;
};

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> r = {
      {"paley5", {"Paley(5), the pentagon", true, [] { return paley(5); }}},
      {"paley9", {"Paley(9), the 3x3 rook graph", true, [] { return paley(9); }}},
      {"petersen", {"Petersen graph, Kneser K(5,2)", true, kneser52}},
      {"petersen-complement", {"complement of Petersen, T(5)", true, [] { return kneser52().complement(); }}},
      {"paley13", {"Paley(13)", true, [] { return paley(13); }}},
      {"gq22", {"generalized quadrangle GQ(2,2)", true, [] { return triangular(6).complement(); }}},
      {"t6", {"triangular graph T(6), line graph of K6", true, [] { return triangular(6); }}},
      {"clebsch", {"folded 5-cube", true, clebsch}},
      {"clebsch-complement", {"complement of the Clebsch graph", true, [] { return clebsch().complement(); }}},
      {"hamming24", {"Hamming graph H(2,4), the 4x4 rook graph", true, rook44}},
      {"hamming24-complement", {"complement of H(2,4)", true, [] { return rook44().complement(); }}},
      {"paley17", {"Paley(17)", true, [] { return paley(17); }}},
      {"shrikhande", {"Shrikhande graph, (16,6,2,2) but not rank 3", false, shrikhande}},
      {"w6", {"wheel on 6 vertices", false, wheel6}},
      {"tadpole", {"tadpole T(5,1): pentagon with a pendant vertex", false, tadpole51}},
      {"square-path", {"4-cycle with a 2-edge path between opposite corners", false, square_path}},
  };
  return r;
}

std::string normalize(const std::string& s) {
  std::string t;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return t;
}

std::optional<int> numeric_suffix(const std::string& s, const std::string& prefix) {
  if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  int v = 0;
  for (std::size_t i = prefix.size(); i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + (s[i] - '0');
    if (v > 100000) return std::nullopt;
  }
  return v;
}

}  // namespace

Graph cycle_graph(int n) {
  if (n < 3) throw UnsupportedOrder("cycle needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  g.set_name("c" + std::to_string(n));
  return g;
}

Graph complete_graph(int n) {
  if (n < 2) throw UnsupportedOrder("complete graph needs n >= 2");
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  g.set_name("k" + std::to_string(n));
  return g;
}

Graph paley(int q) {
  if (q == 9) return named(Graph(9, kPaley9), "paley9");
  if (!is_prime(q) || q % 4 != 1) throw UnsupportedOrder("paley(q) needs q prime with q = 1 mod 4, or q = 9");
  std::vector<char> square(q, 0);
  for (int x = 1; x < q; ++x) square[(x * x) % q] = 1;
  Graph g(q);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (square[j - i]) g.add_edge(i, j);
  return named(std::move(g), "paley" + std::to_string(q));
}

Graph catalog(const std::string& name) {
  const std::string key = normalize(name);
  for (const auto& [nm, b] : registry())
    if (normalize(nm) == key) return named(b.make(), nm);
  if (key == "pentagon") return named(paley(5), "paley5");
  if (auto q = numeric_suffix(key, "paley")) return paley(*q);
  if (auto n = numeric_suffix(key, "c")) return cycle_graph(*n);
  if (auto n = numeric_suffix(key, "k")) return complete_graph(*n);
  throw std::invalid_argument("unknown graph '" + name + "'");
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (const auto& [nm, b] : registry()) {
    CatalogEntry e{nm, b.description, b.rank3, std::nullopt};
    e.params = srg_params(b.make());
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> rank3_table() {
  std::vector<std::string> out;
  for (const auto& [nm, b] : registry())
    if (b.rank3) out.push_back(nm);
  return out;
}

}  // namespace copcp
