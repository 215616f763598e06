#pragma once

// Tomita data for a faithful state on M_n and the gauge freedom it induces on
// the density operator built from irreducible projectors.
//
// Antilinear operators are stored as one matrix M acting by v -> M conj(v).
// Composition rules used throughout:
//   antilinear(M1) o antilinear(M2) = linear      M1 conj(M2)
//   antilinear(M)  o linear(A)      = antilinear  M conj(A)
//   linear(A)      o antilinear(M)  = antilinear  A M
// so J X J for a linear X is the linear map J conj(X) conj(J).

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gnsent/decomposition.hpp"
#include "gnsent/gns.hpp"

namespace gnsent {

struct ModularData {
  int dim = 0;
  Eigen::MatrixXcd s_matrix;  // S: [a] -> [a*]
  Eigen::MatrixXcd j_matrix;  // modular conjugation
  Eigen::MatrixXcd delta;     // modular operator, Hermitian positive definite
};

/// Polar decomposition of the involution S = J Delta^{1/2}.
///
/// Throws Error(Unsupported) for multi-block algebras and
/// Error(FaithfulnessRequired) when the null ideal is nonzero.
ModularData tomita_modular(const GNSData& g);

inline Eigen::VectorXcd apply_antilinear(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
  return m * v.conjugate();
}

/// J X J for a linear operator X.
Eigen::MatrixXcd modular_conjugate(const ModularData& m, const Eigen::MatrixXcd& x);

struct ModularResiduals {
  double involution_action = 0.0;  // max_u |S[e_u] - [e_u*]|
  double j_squared = 0.0;          // J^2 = 1
  double j_antiunitary = 0.0;      // <Jv, Jw> = <w, v>
  double polar = 0.0;              // S = J Delta^{1/2}
  double cyclic_fixed = 0.0;       // J Omega = Omega
  double commutant = 0.0;          // [J pi(a) J, pi(b)] over units a, b

  double max() const;
};

ModularResiduals check_modular(const GNSData& g, const ModularData& m);

/// U(g) = J pi(g) J. Throws Error(InvalidUnitary) unless g* g = 1 to 1e-10.
Eigen::MatrixXcd gauge_unitary(const GNSData& g, const ModularData& m, const AlgebraElement& u);

/// P_g^(k) = J pi(g e_kk g*) J, k = 0..n-1.
ProjectorFamily gauge_projectors(const GNSData& g, const ModularData& m, const AlgebraElement& u);

/// rho(g) = sum_k P_g^(k) |Omega><Omega| P_g^(k).
DensityOperator gauge_density(const GNSData& g, const ModularData& m, const AlgebraElement& u);

/// Haar-distributed unitary on M_n: QR of a seeded complex Ginibre matrix
/// with the phases of R's diagonal moved into Q.
AlgebraElement haar_unitary(int n, std::uint64_t seed);

/// exp(iH) for the Hermitian H = sum_p params[p] B_p, where B_p runs over
/// E_kk, then (E_kl + E_lk)/sqrt(2) and i(E_kl - E_lk)/sqrt(2) for k < l.
AlgebraElement unitary_from_parameters(int n, const Eigen::VectorXd& params);

struct GaugeRefinement {
  std::size_t start_sample = 0;  // the sampled g the ascent started from
  Eigen::VectorXd parameters;    // g = g_start exp(iH(parameters))
  double entropy = 0.0;
  int evaluations = 0;
};

struct GaugeReport {
  double baseline_entropy = 0.0;  // S(rho(1))
  double upper_bound = 0.0;       // ln n
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> entropies;
  double min = 0.0;
  double max = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  std::optional<GaugeRefinement> refinement;

  /// min >= baseline - tol and max (including any refinement) <= ln n + tol.
  bool within_bounds(double tol = 1e-9) const;
};

/// Seed used for sample `index` of a scan seeded with `seed`.
std::uint64_t scan_sample_seed(std::uint64_t seed, std::size_t index) noexcept;

/// Entropies of rho(g) over `samples` Haar draws. With `refine`, a
/// coordinate ascent (steps 0.5 halving to 1e-4) on g = g_best exp(iH)
/// starts from the best sample.
///
/// Requires a faithful diagonal state on M_n (Error(Unsupported) otherwise).
GaugeReport entropy_scan(const GNSData& g, const ModularData& m, std::size_t samples, std::uint64_t seed,
                         bool refine = false);

}  // namespace gnsent
