#include "gnsent/random.hpp"

#include <cmath>

namespace gnsent {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXcd random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m(rows, cols);
  // Fill row by row so the draw order does not depend on Eigen's storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re * s, im * s);
    }
  }
  return m;
}

AlgebraElement random_element(const BlockSpec& spec, Rng& rng) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int n : spec.blocks()) blocks.push_back(random_complex_matrix(n, n, rng));
  return {spec, std::move(blocks)};
}

Eigen::VectorXcd random_unit_vector(Eigen::Index n, Rng& rng) {
  Eigen::VectorXcd v = random_complex_matrix(n, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace gnsent
