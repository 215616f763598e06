#include "gnsent/gns.hpp"

#include <cmath>
#include <sstream>

#include "gnsent/error.hpp"
#include "linalg.hpp"

namespace gnsent {

Eigen::MatrixXcd gram_matrix(const State& omega) {
  const BlockSpec& spec = omega.spec();
  const int d = spec.linear_dim();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d, d);
  // e_ij* e_i'j' = delta_ii' e_jj', and omega(e_jj') = sigma(j', j).
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_size(k);
    const int off = spec.block_offset(k);
    const auto& sigma = omega.weight(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp) g(off + i * n + j, off + i * n + jp) = sigma(jp, j);
  }
  return g;
}

NullIdeal null_ideal(const BlockSpec& spec, const Eigen::MatrixXcd& gram, double rel_tol) {
  NullIdeal out;
  out.basis = detail::psd_null_space(gram, rel_tol);
  if (out.basis.cols() == 0) return out;
  const Eigen::MatrixXcd proj = out.basis * out.basis.adjoint();
  for (int u = 0; u < spec.linear_dim(); ++u) {
    const Eigen::MatrixXcd moved = left_multiplication_matrix(matrix_unit(spec, u)) * out.basis;
    const Eigen::MatrixXcd residual = moved - proj * moved;
    for (Eigen::Index c = 0; c < residual.cols(); ++c) {
      out.left_ideal_deviation = std::max(out.left_ideal_deviation, residual.col(c).norm());
    }
  }
  return out;
}

GNSData build_gns(const State& omega, double rel_tol) {
  GNSData g(omega);
  g.cutoff_ = rel_tol;
  g.gram_ = gram_matrix(omega);
  const auto eig = detail::hermitian_eigen(g.gram_);
  g.gram_spectrum_ = eig.values;
  g.null_ = null_ideal(omega.spec(), g.gram_, rel_tol);

  const double top = eig.values.size() ? eig.values(0) : 0.0;
  const Eigen::Index keep = eig.values.size() - g.null_.dim();
  if (keep <= 0 || top <= 0.0) {
    throw Error(ErrorCode::NumericalDegeneracy, "Gram matrix has no positive eigenvalues");
  }
  const double bottom = eig.values(keep - 1);
  if (top / bottom > 1e12) {
    std::ostringstream os;
    os << "Gram condition number " << top / bottom << " exceeds 1e12 on the kept subspace";
    throw Error(ErrorCode::NumericalDegeneracy, os.str());
  }

  const Eigen::MatrixXcd kept = eig.vectors.leftCols(keep);
  const Eigen::VectorXd scale = eig.values.head(keep).cwiseSqrt();
  g.quotient_basis_ = kept * scale.cwiseInverse().cast<Complex>().asDiagonal();
  // Q^dagger G = diag(sqrt(mu)) V_kept^dagger.
  g.coordinates_ = scale.cast<Complex>().asDiagonal() * kept.adjoint();
  g.cyclic_ = g.class_of(AlgebraElement::identity(omega.spec()));
  return g;
}

Eigen::VectorXcd GNSData::class_of(const AlgebraElement& a) const {
  if (!(a.spec() == spec())) {
    throw Error(ErrorCode::Shape, "class_of: element on " + a.spec().to_string() + ", GNS data on " +
                                      spec().to_string());
  }
  return coordinates_ * a.coefficients();
}

Eigen::MatrixXcd GNSData::induced(const Eigen::MatrixXcd& unit_map) const {
  return coordinates_ * unit_map * quotient_basis_;
}

Eigen::MatrixXcd GNSData::represent(const AlgebraElement& a) const {
  if (!(a.spec() == spec())) {
    throw Error(ErrorCode::Shape, "represent: element on " + a.spec().to_string() + ", GNS data on " +
                                      spec().to_string());
  }
  return induced(left_multiplication_matrix(a));
}

std::vector<Eigen::MatrixXcd> GNSData::unit_representatives() const {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(spec().linear_dim()));
  for (int u = 0; u < spec().linear_dim(); ++u) out.push_back(represent(matrix_unit(spec(), u)));
  return out;
}

Eigen::MatrixXcd represent(const GNSData& g, const AlgebraElement& a) { return g.represent(a); }

bool is_cyclic_vector(const GNSData& g, const Eigen::VectorXcd& v, double rel_tol) {
  const int d = g.hilbert_dim();
  if (v.size() != d) throw Error(ErrorCode::Shape, "is_cyclic_vector: vector length mismatch");
  const int units = g.spec().linear_dim();
  Eigen::MatrixXcd orbit(d, units);
  const auto reps = g.unit_representatives();
  for (int u = 0; u < units; ++u) orbit.col(u) = reps[static_cast<std::size_t>(u)] * v;
  return detail::numerical_rank(orbit, rel_tol) == d;
}

bool check_cyclic(const GNSData& g) { return is_cyclic_vector(g, g.cyclic()); }

}  // namespace gnsent
