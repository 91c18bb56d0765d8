#pragma once

#include <cstdint>
#include <random>

#include "copcp/linalg.hpp"

namespace copcp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  int index(int n);  // uniform in [0, n)
  Vec dirichlet(int n);
  CVec complex_normal(int n);
  Mat gaussian(int rows, int cols);
  Mat orthogonal(int n);
  std::mt19937_64& engine() { return gen_; }

  // child generator for the k-th job of a deterministic schedule
  static Rng stream(std::uint64_t seed, std::uint64_t k);

 private:
  std::mt19937_64 gen_;
};

}  // namespace copcp
