#include "copcp/sos.hpp"

#include <string>

namespace copcp::sos {

namespace {

void fill(int n, int degree, int pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos == n - 1) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    fill(n, degree - e, pos + 1, cur, out);
  }
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<Exponent> monomials(int n, int degree) {
  std::vector<Exponent> out;
  Exponent cur(n, 0);
  fill(n, degree, 0, cur, out);
  return out;
}

int GramBasis::gram_size() const { return static_cast<int>(mons.size()); }

GramBasis make_basis(int n, int r) {
  if (r < 0 || r > 2) throw UnsupportedLevel("hierarchy level must be 0, 1 or 2 (got " + std::to_string(r) + ")");
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (r == 2 && n > 8) throw SizeLimit("level 2 is limited to n <= 8");
  if (r == 1 && n > 12) throw SizeLimit("level 1 is limited to n <= 12");
  GramBasis g;
  g.n = n;
  g.r = r;
  g.mons = monomials(n, r + 2);
  std::map<Exponent, int> block_of;
  std::vector<int> local(g.mons.size());
  for (size_t k = 0; k < g.mons.size(); ++k) {
    Exponent par(n);
    for (int i = 0; i < n; ++i) par[i] = g.mons[k][i] % 2;
    auto it = block_of.find(par);
    int b;
    if (it == block_of.end()) {
      b = static_cast<int>(g.blocks.size());
      block_of.emplace(par, b);
      g.blocks.emplace_back();
    } else {
      b = it->second;
    }
    local[k] = static_cast<int>(g.blocks[b].size());
    g.blocks[b].push_back(static_cast<int>(k));
  }
  g.targets = monomials(n, r + 2);
  for (size_t t = 0; t < g.targets.size(); ++t) g.target_index.emplace(g.targets[t], static_cast<int>(t));
  g.terms.assign(g.targets.size(), {});
  Exponent gam(n);
  for (size_t b = 0; b < g.blocks.size(); ++b) {
    const auto& blk = g.blocks[b];
    for (size_t i = 0; i < blk.size(); ++i)
      for (size_t j = i; j < blk.size(); ++j) {
        for (int v = 0; v < n; ++v) gam[v] = (g.mons[blk[i]][v] + g.mons[blk[j]][v]) / 2;
        int t = g.target_index.at(gam);
        g.terms[t].push_back({static_cast<int>(b), static_cast<int>(i), static_cast<int>(j)});
      }
  }
  return g;
}

Vec form_coefficients(const GramBasis& g, const Mat& M) {
  const int n = g.n;
  if (M.rows() != n || M.cols() != n) throw DimensionMismatch("matrix size does not match the Gram basis");
  Vec c = Vec::Zero(static_cast<Eigen::Index>(g.targets.size()));
  Exponent gam(n);
  for (const Exponent& a : monomials(n, g.r)) {
    double mult = factorial(g.r);
    for (int e : a) mult /= factorial(e);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (M(i, j) == 0.0) continue;
        gam = a;
        gam[i] += 1;
        gam[j] += 1;
        c(g.target_index.at(gam)) += mult * M(i, j);
      }
  }
  return c;
}

int add_gram_blocks(const GramBasis& g, optim::SdpProblem& p) {
  int first = -1;
  for (const auto& blk : g.blocks) {
    int b = p.add_block(static_cast<int>(blk.size()));
    if (first < 0) first = b;
  }
  return first;
}

optim::Row gram_row(const GramBasis& g, int t, int first) {
  optim::Row row;
  for (const auto& [b, i, j] : g.terms[t]) row.elem(first + b, i, j, i == j ? 1.0 : 2.0);
  return row;
}

Vec gram_coefficients(const GramBasis& g, const std::vector<Mat>& grams) {
  Vec c = Vec::Zero(static_cast<Eigen::Index>(g.targets.size()));
  for (size_t t = 0; t < g.terms.size(); ++t)
    for (const auto& [b, i, j] : g.terms[t]) c(t) += (i == j ? 1.0 : 2.0) * grams[b](i, j);
  return c;
}

std::vector<Mat> moment_matrices(const GramBasis& g, const Vec& y) {
  std::vector<Mat> out(g.blocks.size());
  for (size_t b = 0; b < g.blocks.size(); ++b) {
    const int k = static_cast<int>(g.blocks[b].size());
    out[b] = Mat::Zero(k, k);
  }
  for (size_t t = 0; t < g.terms.size(); ++t)
    for (const auto& [b, i, j] : g.terms[t]) {
      out[b](i, j) = y(t);
      out[b](j, i) = y(t);
    }
  return out;
}

Mat moment_witness(const GramBasis& g, const Vec& y) {
  const int n = g.n;
  Mat X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat E = Mat::Zero(n, n);
      E(i, j) += 0.5;
      E(j, i) += 0.5;
      X(i, j) = X(j, i) = form_coefficients(g, E).dot(y);
    }
  return X;
}

}  // namespace copcp::sos
