#pragma once

#include <Eigen/Dense>

namespace gnsent {

/// A positive unit-trace matrix. Construction throws Error(InvalidDensity)
/// when the matrix is not square, deviates from Hermitian by more than 1e-8,
/// has trace off by more than 1e-10, or has an eigenvalue below -1e-12.
class DensityOperator {
 public:
  explicit DensityOperator(Eigen::MatrixXcd matrix);

  static DensityOperator pure(const Eigen::VectorXcd& v);
  static DensityOperator maximally_mixed(int dim);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

 private:
  Eigen::MatrixXcd matrix_;
};

/// Eigenvalues sorted descending; anything at or below 1e-12 is set to zero.
struct Spectrum {
  Eigen::VectorXd eigenvalues;

  double max() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
};

Spectrum spectrum(const DensityOperator& rho);
/// Same as above for a raw Hermitian matrix (no trace requirement).
Spectrum spectrum(const Eigen::MatrixXcd& hermitian);

/// -sum p ln p in nats, with 0 ln 0 = 0.
double entropy_of(const Spectrum& s);
double von_neumann_entropy(const DensityOperator& rho);

/// -l ln l - (1-l) ln(1-l); throws Error(OutOfRange) outside [0, 1].
double binary_entropy(double lambda);

}  // namespace gnsent
