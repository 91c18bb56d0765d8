#pragma once

#include <array>
#include <map>
#include <vector>

#include "copcp/optim.hpp"

namespace copcp::sos {

using Exponent = std::vector<int>;

// degree-d monomials in n variables, lexicographically descending in the exponent vector
std::vector<Exponent> monomials(int n, int degree);

// Gram bookkeeping for  <x^2, M x^2> * ||x||^(2r)  written as a form of degree 2(r+2).
// The form is even in every variable, so the Gram matrix splits by exponent parity.
struct GramBasis {
  int n = 0;
  int r = 0;
  std::vector<Exponent> mons;             // degree r+2
  std::vector<std::vector<int>> blocks;   // indices into mons, one list per parity class
  std::vector<Exponent> targets;          // gamma with |gamma| = r+2, coefficient of x^(2 gamma)
  std::map<Exponent, int> target_index;
  // for each target: (block, local i, local j) with i <= j and m_i + m_j = 2 gamma
  std::vector<std::vector<std::array<int, 3>>> terms;

  int gram_size() const;
};

// throws UnsupportedLevel for r outside {0,1,2} and SizeLimit when n > 8 at r = 2
GramBasis make_basis(int n, int r);

// coefficient of x^(2 gamma) in <x^2, M x^2> ||x||^(2r), per target
Vec form_coefficients(const GramBasis& g, const Mat& M);

// Gram blocks are appended to the problem; returns the index of the first block.
int add_gram_blocks(const GramBasis& g, optim::SdpProblem& p);

// row for target t holding the Gram terms, with the first Gram block at `first`
optim::Row gram_row(const GramBasis& g, int t, int first);

// sum of Gram contributions per target
Vec gram_coefficients(const GramBasis& g, const std::vector<Mat>& grams);

// moment matrices per parity block built from a functional y on the targets
std::vector<Mat> moment_matrices(const GramBasis& g, const Vec& y);

// X_ij = L(x_i^2 x_j^2 ||x||^(2r)) for the functional y
Mat moment_witness(const GramBasis& g, const Vec& y);

}  // namespace copcp::sos
