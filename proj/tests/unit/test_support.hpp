#pragma once

// Independent oracles and generators shared by the unit tests. Nothing here
// calls into the code path it is used to check.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "gnsent/gnsent.hpp"

namespace gnsent::test {

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// out(r, c) = a(r / m, c / m) * b(r % m, c % m).
inline Eigen::MatrixXcd kron_oracle(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index m = b.rows();
  Eigen::MatrixXcd out(a.rows() * m, a.cols() * m);
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) = a(r / m, c / m) * b(r % m, c % m);
  return out;
}

inline Eigen::MatrixXcd unit_matrix(int n, int i, int j) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline AlgebraElement single(const Eigen::MatrixXcd& m) {
  return {BlockSpec({static_cast<int>(m.rows())}), {m}};
}

/// Random unit vector in C^(da*db), wrapped as a bipartite vector.
inline BipartiteVector random_bipartite(int da, int db, Rng& rng) {
  return {da, db, random_unit_vector(static_cast<Eigen::Index>(da) * db, rng)};
}

/// Random faithful state with generic (non-diagonal) weights on `spec`.
inline State random_faithful_state(const BlockSpec& spec, Rng& rng) {
  std::vector<Eigen::MatrixXcd> weights;
  double total = 0.0;
  for (int n : spec.blocks()) {
    const Eigen::MatrixXcd z = random_complex_matrix(n, n, rng);
    Eigen::MatrixXcd w = z * z.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(n, n);
    total += w.trace().real();
    weights.push_back(std::move(w));
  }
  for (auto& w : weights) w /= total;
  return {spec, std::move(weights)};
}

/// Eigenvalues of a Hermitian matrix, descending, from an independent solver
/// call (complex Schur via ComplexEigenSolver, real parts sorted).
inline std::vector<double> sorted_eigenvalues(const Eigen::MatrixXcd& h) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// -sum p ln p over an explicit list.
inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

}  // namespace gnsent::test
