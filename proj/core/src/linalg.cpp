#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gnsent::detail {

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) {
  return (m + m.adjoint()) * 0.5;
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  HermitianEigen out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(m));
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();

  // Reverse into descending order; ties keep the solver's (deterministic) order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return ev(a) > ev(b); });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    out.values(c) = ev(order[static_cast<std::size_t>(c)]);
    Eigen::VectorXcd v = vecs.col(order[static_cast<std::size_t>(c)]);
    const double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(v(r)) > 1e-12 * scale) {
        v *= std::conj(v(r)) / std::abs(v(r));
        break;
      }
    }
    out.vectors.col(c) = v;
  }
  return out;
}

Eigen::MatrixXcd psd_null_space(const Eigen::MatrixXcd& m, double rel_tol) {
  const HermitianEigen eig = hermitian_eigen(m);
  const Eigen::Index n = m.rows();
  if (n == 0) return Eigen::MatrixXcd(0, 0);
  const double cutoff = rel_tol * std::max(eig.values(0), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (eig.values(c) < cutoff || eig.values(0) <= 0.0) keep.push_back(c);
  }
  Eigen::MatrixXcd basis(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(keep[c]);
  }
  return basis;
}

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

std::vector<Eigen::MatrixXcd> commutant_of(const std::vector<Eigen::MatrixXcd>& gens, int dim,
                                           double rel_tol) {
  const Eigen::Index d = dim;
  const Eigen::Index d2 = d * d;
  // Column-major vec: vec(X G - G X) = (G^T (x) I - I (x) G) vec(X).
  Eigen::MatrixXcd normal = Eigen::MatrixXcd::Zero(d2, d2);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  for (const auto& g : gens) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        // block (i, j) of G^T (x) I is G(j, i) * I; block (i, j) of I (x) G is delta_ij * G.
        c.block(i * d, j * d, d, d) += g(j, i) * eye;
        if (i == j) c.block(i * d, j * d, d, d) -= g;
      }
    }
    normal.noalias() += c.adjoint() * c;
  }
  std::vector<Eigen::MatrixXcd> basis;
  const Eigen::MatrixXcd null = gens.empty() ? Eigen::MatrixXcd::Identity(d2, d2)
                                             : psd_null_space(normal, rel_tol);
  basis.reserve(static_cast<std::size_t>(null.cols()));
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Eigen::MatrixXcd x(d, d);
    for (Eigen::Index j = 0; j < d; ++j) x.col(j) = null.col(c).segment(j * d, d);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace gnsent::detail
