#pragma once

// Small dense helpers shared by the core translation units. Not installed.

#include <Eigen/Dense>

namespace gnsent::detail {

struct HermitianEigen {
  Eigen::VectorXd values;    // descending
  Eigen::MatrixXcd vectors;  // columns match values
};

/// Eigendecomposition of the Hermitian part of `m`, sorted by descending
/// eigenvalue. Each eigenvector's first entry of modulus above 1e-12 (relative
/// to its max entry) is rotated to the positive real axis so that the output
/// does not depend on arbitrary solver phases.
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& m);

/// Orthonormal basis (columns) of the numerical null space of the Hermitian
/// PSD matrix `m`: eigenvectors whose eigenvalue is below rel_tol * max(ev).
Eigen::MatrixXcd psd_null_space(const Eigen::MatrixXcd& m, double rel_tol);

/// Number of singular values above rel_tol * largest singular value.
int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol);

/// Frobenius-norm orthonormal basis of {X : X G = G X for every G in gens},
/// each basis element a d x d matrix.
std::vector<Eigen::MatrixXcd> commutant_of(const std::vector<Eigen::MatrixXcd>& gens, int dim,
                                           double rel_tol = 1e-9);

double max_abs(const Eigen::MatrixXcd& m);

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m);

}  // namespace gnsent::detail
