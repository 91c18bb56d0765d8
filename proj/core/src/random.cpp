#include "copcp/random.hpp"

namespace copcp {

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

int Rng::index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }

Vec Rng::dirichlet(int n) {
  std::exponential_distribution<double> ex(1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = ex(gen_);
  return v / v.sum();
}

CVec Rng::complex_normal(int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(normal(), normal());
  return v;
}

Mat Rng::gaussian(int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

Mat Rng::orthogonal(int n) {
  Eigen::HouseholderQR<Mat> qr(gaussian(n, n));
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32), 0x9e3779b9u};
  std::mt19937_64 g(seq);
  return Rng(g());
}

}  // namespace copcp
