#pragma once

// States on finite-dimensional C*-algebras and the bipartite pure-state tools
// (partial trace, Schmidt decomposition) they are cross-checked against.

#include <vector>

#include <Eigen/Dense>

#include "gnsent/algebra.hpp"

namespace gnsent {

/// Eigenvalues above -kPositivityTolerance are treated as zero.
inline constexpr double kPositivityTolerance = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-12;

/// A state omega(a) = sum_k trace(sigma_k a_k) stored by its block weights.
///
/// Construction validates that every sigma_k is Hermitian positive
/// semidefinite and that the traces sum to one. Eigenvalues in
/// (-1e-12, 0) are clamped to zero; anything more negative is rejected.
class State {
 public:
  State(BlockSpec spec, std::vector<Eigen::MatrixXcd> weights);

  const BlockSpec& spec() const noexcept { return spec_; }
  const std::vector<Eigen::MatrixXcd>& weights() const noexcept { return weights_; }
  const Eigen::MatrixXcd& weight(std::size_t k) const { return weights_.at(k); }

  /// The density element sigma = (+)_k sigma_k as an algebra element.
  AlgebraElement density_element() const;

  /// No weight is rank deficient.
  bool is_faithful(double rel_tol = 1e-10) const;

 private:
  BlockSpec spec_;
  std::vector<Eigen::MatrixXcd> weights_;
};

/// omega(a) = sum_i lambda_i a_ii on M_n.
State diagonal_state(const std::vector<double>& lambda);
/// omega(a) = trace(a) / n on M_n.
State tracial_state(int n);

Complex evaluate(const State& omega, const AlgebraElement& a);

struct BipartiteVector {
  int dim_a = 0;
  int dim_b = 0;
  /// Row-major over (A, B): amplitude of |i>|j> at index i * dim_b + j.
  Eigen::VectorXcd amplitudes;

  /// Throws Error(InvalidVector) unless the length is dim_a * dim_b and the
  /// norm is one to 1e-10.
  BipartiteVector(int dim_a, int dim_b, Eigen::VectorXcd amplitudes);
};

/// sqrt(lambda)|+,-> + sqrt(1-lambda)|-,+> with |+> = (1,0), |-> = (0,1).
BipartiteVector psi_lambda(double lambda);

/// The pure state sigma = |v><v| on a single-block algebra.
State vector_state(const Eigen::VectorXcd& v, const BlockSpec& spec);
State vector_state(const BipartiteVector& v);

/// omega restricted along iota: the state x -> omega(iota(x)) on iota.source().
State restrict(const State& omega, const Embedding& iota);

enum class Subsystem { A, B };

/// Reduced density matrix of the kept subsystem.
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int dim_a, int dim_b, Subsystem keep);
Eigen::MatrixXcd partial_trace(const BipartiteVector& v, Subsystem keep);

struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;  // descending, nonnegative
  Eigen::MatrixXcd left;         // columns: orthonormal vectors in C^{dim_a}
  Eigen::MatrixXcd right;        // columns: orthonormal vectors in C^{dim_b}

  /// sum_k c_k left_k (x) right_k as a row-major amplitude vector.
  Eigen::VectorXcd reconstruct() const;
};

SchmidtDecomposition schmidt(const BipartiteVector& v);

/// Largest |omega_0(alpha) - trace(rho_A alpha)| over the matrix units alpha of
/// M_{dim_a}, where omega_0 is the restriction of the vector state of `v` to
/// the left tensor factor and rho_A is the partial trace over B.
double restriction_matches_partial_trace(const BipartiteVector& v);

}  // namespace gnsent
