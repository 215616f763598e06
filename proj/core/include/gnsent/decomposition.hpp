#pragma once

// Splitting the GNS space into irreducible invariant subspaces and building
// the density operator rho = sum_k P_k |Omega><Omega| P_k from the resulting
// projector family.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gnsent/entropy.hpp"
#include "gnsent/gns.hpp"

namespace gnsent {

struct ProjectorFamily {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> projectors;
};

/// Largest residual of each family invariant. All zero for an exact family.
struct FamilyResiduals {
  double hermiticity = 0.0;
  double idempotency = 0.0;
  double orthogonality = 0.0;
  double completeness = 0.0;
  double invariance = 0.0;  // max ||[P, pi(u)]|| over matrix units u
  /// Commutant dimension of pi restricted to each range (1 = irreducible).
  std::vector<int> restricted_commutant_dims;

  double max_structural() const;
  bool all_irreducible() const;
};

FamilyResiduals check_family(const GNSData& g, const ProjectorFamily& family);

/// Frobenius-orthonormal basis of the commutant pi(A)'.
std::vector<Eigen::MatrixXcd> commutant_basis(const GNSData& g);

enum class DecompositionMode {
  /// Split first along the eigenspaces of [a] -> [a sigma] (sigma the density
  /// element), then refine degenerate eigenspaces with a seeded random draw.
  /// The resulting rho has the spectrum of sigma.
  Natural,
  /// Eigenprojectors of one seeded random Hermitian commutant element on the
  /// whole space. Any decomposition it produces is valid but the rho spectrum
  /// depends on the draw.
  Random,
};

/// Throws Error(NumericalDegeneracy) when no certified split is found within
/// 16 retries (each retry moves to the next seed).
ProjectorFamily irreducible_projectors(const GNSData& g, std::uint64_t seed,
                                       DecompositionMode mode = DecompositionMode::Natural);

/// Throws Error(InvalidFamily) if the family is not orthogonal and complete to 1e-10.
DensityOperator density_from_projectors(const GNSData& g, const ProjectorFamily& family);

/// max |trace(rho pi(a)) - omega(a)| over every matrix unit and `samples`
/// random elements drawn with `seed`.
double verify_pairing(const GNSData& g, const DensityOperator& rho, const State& omega, int samples,
                      std::uint64_t seed);

struct IsotypicComponent {
  std::size_t block;  // which simple summand M_{n_k} the irrep belongs to
  int irrep_dim;
  int multiplicity;
};

struct Multiplicities {
  std::vector<IsotypicComponent> components;
  /// True iff every multiplicity is at most one, i.e. the decomposition is unique.
  bool unique = true;
};

Multiplicities multiplicities(const GNSData& g);

}  // namespace gnsent
