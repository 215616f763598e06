#pragma once

// The GNS construction for a state on a finite-dimensional C*-algebra.
//
// The algebra is its own carrier space with the sesquilinear form
// <a, b> = omega(a* b). The Gram matrix of that form over the matrix units
// determines everything: its kernel is the null ideal, and its nonzero
// eigenvectors, scaled by 1/sqrt(eigenvalue), give an orthonormal basis of the
// quotient. No closure step is needed in finite dimensions.

#include <vector>

#include <Eigen/Dense>

#include "gnsent/algebra.hpp"
#include "gnsent/states.hpp"

namespace gnsent {

inline constexpr double kDefaultNullCutoff = 1e-10;

/// G(u, v) = omega(e_u* e_v) over the matrix-unit enumeration.
Eigen::MatrixXcd gram_matrix(const State& omega);

struct NullIdeal {
  Eigen::MatrixXcd basis;  // orthonormal columns, coefficients over matrix units
  /// max over units u and null vectors v of the distance of u*v from span(basis).
  double left_ideal_deviation = 0.0;

  int dim() const noexcept { return static_cast<int>(basis.cols()); }
};

/// Eigenvectors of `gram` with eigenvalue below rel_tol * (largest eigenvalue).
NullIdeal null_ideal(const BlockSpec& spec, const Eigen::MatrixXcd& gram,
                     double rel_tol = kDefaultNullCutoff);

class GNSData {
 public:
  const BlockSpec& spec() const noexcept { return state_.spec(); }
  const State& state() const noexcept { return state_; }
  const Eigen::MatrixXcd& gram() const noexcept { return gram_; }
  /// Gram eigenvalues, descending.
  const Eigen::VectorXd& gram_spectrum() const noexcept { return gram_spectrum_; }
  const NullIdeal& null_ideal() const noexcept { return null_; }
  int hilbert_dim() const noexcept { return static_cast<int>(quotient_basis_.cols()); }
  /// d_A x d; column i holds unit coefficients of a representative of basis vector i.
  const Eigen::MatrixXcd& quotient_basis() const noexcept { return quotient_basis_; }
  /// d x d_A map from unit coefficients of a to the coordinates of [a].
  const Eigen::MatrixXcd& coordinate_map() const noexcept { return coordinates_; }
  /// Cyclic vector: the class of the identity.
  const Eigen::VectorXcd& cyclic() const noexcept { return cyclic_; }
  double cutoff() const noexcept { return cutoff_; }
  bool is_faithful() const noexcept { return null_.dim() == 0; }

  /// Coordinates of the class [a] in the orthonormal quotient basis.
  Eigen::VectorXcd class_of(const AlgebraElement& a) const;

  /// pi(a) as a d x d matrix: pi(a)[b] = [ab].
  Eigen::MatrixXcd represent(const AlgebraElement& a) const;

  /// Pushes a linear map on the algebra (given in unit coordinates) down to
  /// the quotient. The map must leave the null ideal invariant.
  Eigen::MatrixXcd induced(const Eigen::MatrixXcd& unit_map) const;

  /// pi(u) for every matrix unit u, in enumeration order.
  std::vector<Eigen::MatrixXcd> unit_representatives() const;

 private:
  friend GNSData build_gns(const State& omega, double rel_tol);
  explicit GNSData(State s) : state_(std::move(s)) {}

  State state_;
  Eigen::MatrixXcd gram_;
  Eigen::VectorXd gram_spectrum_;
  NullIdeal null_;
  Eigen::MatrixXcd quotient_basis_;
  Eigen::MatrixXcd coordinates_;  // d x d_A: unit coefficients -> quotient coordinates
  Eigen::VectorXcd cyclic_;
  double cutoff_ = kDefaultNullCutoff;
};

/// Throws Error(NumericalDegeneracy) if the kept Gram eigenvalues span more
/// than twelve orders of magnitude.
GNSData build_gns(const State& omega, double rel_tol = kDefaultNullCutoff);

Eigen::MatrixXcd represent(const GNSData& g, const AlgebraElement& a);

/// Whether {pi(u) v : u a matrix unit} spans the GNS space.
bool is_cyclic_vector(const GNSData& g, const Eigen::VectorXcd& v, double rel_tol = 1e-10);
bool check_cyclic(const GNSData& g);

}  // namespace gnsent
