#include "gnsent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnsent/error.hpp"
#include "linalg.hpp"

namespace gnsent {

namespace {

constexpr double kHermiticityTolerance = 1e-8;
constexpr double kTraceTolerance = 1e-10;
constexpr double kClampTolerance = 1e-12;

void require_hermitian(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidDensity, "density matrix is not square");
  const double dev = detail::max_abs(m - m.adjoint());
  if (dev > kHermiticityTolerance) {
    std::ostringstream os;
    os << "density matrix not Hermitian (deviation " << dev << ")";
    throw Error(ErrorCode::InvalidDensity, os.str());
  }
}

}  // namespace

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  require_hermitian(matrix_);
  const std::complex<double> tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "density matrix trace is " << tr.real() << ", expected 1";
    throw Error(ErrorCode::InvalidDensity, os.str());
  }
  const auto eig = detail::hermitian_eigen(matrix_);
  if (eig.values.size() && eig.values(eig.values.size() - 1) < -kClampTolerance) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << eig.values(eig.values.size() - 1);
    throw Error(ErrorCode::InvalidDensity, os.str());
  }
}

DensityOperator DensityOperator::pure(const Eigen::VectorXcd& v) {
  return DensityOperator(v * v.adjoint() / v.squaredNorm());
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

Spectrum spectrum(const Eigen::MatrixXcd& hermitian) {
  require_hermitian(hermitian);
  // hermitian_eigen already sorts descending.
  Eigen::VectorXd values = detail::hermitian_eigen(hermitian).values;
  for (double& x : values)
    if (x <= kClampTolerance) x = 0.0;
  return {std::move(values)};
}

Spectrum spectrum(const DensityOperator& rho) { return spectrum(rho.matrix()); }

double entropy_of(const Spectrum& s) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double p = s.eigenvalues(i);
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho) { return entropy_of(spectrum(rho)); }

double binary_entropy(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "binary_entropy requires 0 <= lambda <= 1");
  }
  double h = 0.0;
  if (lambda > 0.0) h -= lambda * std::log(lambda);
  if (lambda < 1.0) h -= (1.0 - lambda) * std::log(1.0 - lambda);
  return h;
}

}  // namespace gnsent
