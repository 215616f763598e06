#include "gnsent/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnsent/error.hpp"
#include "gnsent/random.hpp"
#include "linalg.hpp"

namespace gnsent {

namespace {

constexpr double kFamilyTolerance = 1e-10;
constexpr double kGapTolerance = 1e-8;
constexpr double kCentralTolerance = 1e-8;
constexpr int kMaxRetries = 16;

// pi of a generating set of the algebra: e_{i,i+1}, e_{i+1,i} per block (e_00
// for 1x1 blocks). Its commutant equals the commutant of all of pi(A).
std::vector<Eigen::MatrixXcd> generator_representatives(const GNSData& g) {
  const BlockSpec& spec = g.spec();
  std::vector<Eigen::MatrixXcd> gens;
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_size(k);
    if (n == 1) {
      gens.push_back(g.represent(matrix_unit(spec, k, 0, 0)));
      continue;
    }
    for (int i = 0; i + 1 < n; ++i) {
      gens.push_back(g.represent(matrix_unit(spec, k, i, i + 1)));
      gens.push_back(g.represent(matrix_unit(spec, k, i + 1, i)));
    }
  }
  return gens;
}

std::vector<Eigen::MatrixXcd> restrict_to(const std::vector<Eigen::MatrixXcd>& ops,
                                          const Eigen::MatrixXcd& basis) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(basis.adjoint() * op * basis);
  return out;
}

// Largest ||(1 - E E^dagger) A E|| over ops: how far span(E) is from invariant.
double invariance_residual(const std::vector<Eigen::MatrixXcd>& ops, const Eigen::MatrixXcd& basis) {
  double worst = 0.0;
  for (const auto& op : ops) {
    const Eigen::MatrixXcd moved = op * basis;
    worst = std::max(worst, detail::max_abs(moved - basis * (basis.adjoint() * moved)));
  }
  return worst;
}

// Groups descending eigenvalues into runs separated by gaps larger than `gap`.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& values, double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;  // [begin, end)
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values(i - 1) - values(i) > gap) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

// Orthogonal projection onto the commutant of a representation of
// (+)_k M_{n_k}, given pi(e_ij) in enumeration order:
// X -> sum_k (1/n_k) sum_ij pi(e^k_ij) X pi(e^k_ji).
Eigen::MatrixXcd commutant_projection(const BlockSpec& spec, const std::vector<Eigen::MatrixXcd>& units,
                                      const Eigen::MatrixXcd& x) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(x.rows(), x.cols());
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_size(k);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(x.rows(), x.cols());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto& eij = units[static_cast<std::size_t>(spec.unit_index(k, i, j))];
        acc.noalias() += eij * x * eij.adjoint();
      }
    }
    out += acc / static_cast<double>(n);
  }
  return out;
}

// An invariant subspace carries an irreducible representation iff exactly one
// block acts on it (its central projection is the identity there, the others
// vanish) and its dimension is that block's size.
bool is_irreducible(const BlockSpec& spec, const std::vector<Eigen::MatrixXcd>& local_units) {
  const Eigen::Index m = local_units.front().rows();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m, m);
  int acting = -1;
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < spec.block_size(k); ++i) z += local_units[static_cast<std::size_t>(spec.unit_index(k, i, i))];
    if (detail::max_abs(z - eye) <= kCentralTolerance) {
      if (acting >= 0) return false;
      acting = static_cast<int>(k);
    } else if (detail::max_abs(z) > kCentralTolerance) {
      return false;
    }
  }
  return acting >= 0 && m == spec.block_size(static_cast<std::size_t>(acting));
}

// Splits the invariant subspace spanned by the orthonormal columns of `basis`
// into irreducible pieces, using the eigenspaces of a random Hermitian
// element of the restricted commutant.
std::vector<Eigen::MatrixXcd> split_irreducible(const BlockSpec& spec, const std::vector<Eigen::MatrixXcd>& units,
                                                const Eigen::MatrixXcd& basis, std::uint64_t seed) {
  const auto local_units = restrict_to(units, basis);
  if (is_irreducible(spec, local_units)) return {basis};
  const int r = static_cast<int>(basis.cols());

  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    const Eigen::MatrixXcd x = random_complex_matrix(r, r, rng);
    const Eigen::MatrixXcd h = detail::hermitian_part(commutant_projection(spec, local_units, x + x.adjoint()));
    const auto eig = detail::hermitian_eigen(h);
    const double norm = std::max(std::abs(eig.values(0)), std::abs(eig.values(r - 1)));
    if (norm <= 0.0) continue;
    const Eigen::VectorXd scaled = eig.values / norm;

    std::vector<Eigen::MatrixXcd> pieces;
    bool certified = true;
    for (const auto& [begin, end] : clusters(scaled, kGapTolerance)) {
      const Eigen::MatrixXcd e = eig.vectors.middleCols(begin, end - begin);
      if (invariance_residual(local_units, e) > kFamilyTolerance || !is_irreducible(spec, restrict_to(local_units, e))) {
        certified = false;
        break;
      }
      pieces.push_back(basis * e);
    }
    if (certified) return pieces;
  }
  std::ostringstream os;
  os << "no certified irreducible decomposition after " << kMaxRetries << " retries from seed " << seed;
  throw Error(ErrorCode::NumericalDegeneracy, os.str());
}

ProjectorFamily family_from_bases(int dim, const std::vector<Eigen::MatrixXcd>& bases) {
  ProjectorFamily fam;
  fam.dim = dim;
  for (const auto& b : bases) fam.projectors.push_back(b * b.adjoint());
  return fam;
}

}  // namespace

double FamilyResiduals::max_structural() const {
  return std::max({hermiticity, idempotency, orthogonality, completeness, invariance});
}

bool FamilyResiduals::all_irreducible() const {
  return std::all_of(restricted_commutant_dims.begin(), restricted_commutant_dims.end(),
                     [](int d) { return d == 1; });
}

FamilyResiduals check_family(const GNSData& g, const ProjectorFamily& family) {
  FamilyResiduals res;
  const int d = g.hilbert_dim();
  if (family.dim != d) {
    throw Error(ErrorCode::InvalidFamily, "family dimension " + std::to_string(family.dim) +
                                              " does not match GNS dimension " + std::to_string(d));
  }
  const auto reps = generator_representatives(g);
  const auto units = g.unit_representatives();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t k = 0; k < family.projectors.size(); ++k) {
    const auto& p = family.projectors[k];
    if (p.rows() != d || p.cols() != d) throw Error(ErrorCode::InvalidFamily, "projector has wrong shape");
    sum += p;
    res.hermiticity = std::max(res.hermiticity, detail::max_abs(p - p.adjoint()));
    res.idempotency = std::max(res.idempotency, detail::max_abs(p * p - p));
    for (std::size_t l = k + 1; l < family.projectors.size(); ++l) {
      res.orthogonality = std::max(res.orthogonality, detail::max_abs(p * family.projectors[l]));
    }
    for (const auto& r : units) res.invariance = std::max(res.invariance, detail::max_abs(p * r - r * p));

    const auto eig = detail::hermitian_eigen(p);
    Eigen::Index rank = 0;
    while (rank < eig.values.size() && eig.values(rank) > 0.5) ++rank;
    const Eigen::MatrixXcd range = eig.vectors.leftCols(rank);
    res.restricted_commutant_dims.push_back(
        rank == 0 ? 0 : static_cast<int>(detail::commutant_of(restrict_to(reps, range), static_cast<int>(rank)).size()));
  }
  res.completeness = detail::max_abs(sum - Eigen::MatrixXcd::Identity(d, d));
  return res;
}

std::vector<Eigen::MatrixXcd> commutant_basis(const GNSData& g) {
  return detail::commutant_of(generator_representatives(g), g.hilbert_dim());
}

ProjectorFamily irreducible_projectors(const GNSData& g, std::uint64_t seed, DecompositionMode mode) {
  const int d = g.hilbert_dim();
  const BlockSpec& spec = g.spec();
  const auto ops = generator_representatives(g);
  const auto units = g.unit_representatives();
  const Eigen::MatrixXcd whole = Eigen::MatrixXcd::Identity(d, d);

  if (mode == DecompositionMode::Random) return family_from_bases(d, split_irreducible(spec, units, whole, seed));

  // [a] -> [a sigma] commutes with pi(A) and is self-adjoint for the GNS inner product.
  const Eigen::MatrixXcd weight_op =
      detail::hermitian_part(g.induced(right_multiplication_matrix(g.state().density_element())));
  const auto eig = detail::hermitian_eigen(weight_op);
  const double norm = std::max(std::abs(eig.values(0)), std::abs(eig.values(d - 1)));
  const Eigen::VectorXd scaled = eig.values / norm;

  std::vector<Eigen::MatrixXcd> bases;
  std::uint64_t index = 0;
  for (const auto& [begin, end] : clusters(scaled, kGapTolerance)) {
    const Eigen::MatrixXcd e = eig.vectors.middleCols(begin, end - begin);
    const double residual = invariance_residual(ops, e);
    if (residual > kFamilyTolerance) {
      std::ostringstream os;
      os << "eigenspace of the state weight is not invariant (residual " << residual
         << "); state spectrum is nearly degenerate";
      throw Error(ErrorCode::NumericalDegeneracy, os.str());
    }
    for (auto& piece : split_irreducible(spec, units, e, derive_seed(seed, index++))) bases.push_back(std::move(piece));
  }
  return family_from_bases(d, bases);
}

DensityOperator density_from_projectors(const GNSData& g, const ProjectorFamily& family) {
  const int d = g.hilbert_dim();
  if (family.dim != d || family.projectors.empty()) {
    throw Error(ErrorCode::InvalidFamily, "projector family does not act on the GNS space");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  double orth = 0.0;
  for (std::size_t k = 0; k < family.projectors.size(); ++k) {
    sum += family.projectors[k];
    for (std::size_t l = k + 1; l < family.projectors.size(); ++l) {
      orth = std::max(orth, detail::max_abs(family.projectors[k] * family.projectors[l]));
    }
  }
  const double completeness = detail::max_abs(sum - Eigen::MatrixXcd::Identity(d, d));
  if (completeness > kFamilyTolerance || orth > kFamilyTolerance) {
    std::ostringstream os;
    os << "projector family is not complete and orthogonal (completeness " << completeness
       << ", orthogonality " << orth << ")";
    throw Error(ErrorCode::InvalidFamily, os.str());
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& p : family.projectors) {
    const Eigen::VectorXcd v = p * g.cyclic();
    rho.noalias() += v * v.adjoint();
  }
  return DensityOperator(std::move(rho));
}

double verify_pairing(const GNSData& g, const DensityOperator& rho, const State& omega, int samples,
                      std::uint64_t seed) {
  if (rho.dim() != g.hilbert_dim()) {
    throw Error(ErrorCode::Shape, "verify_pairing: density operator does not act on the GNS space");
  }
  const auto deviation = [&](const AlgebraElement& a) {
    return std::abs((rho.matrix() * g.represent(a)).trace() - evaluate(omega, a));
  };
  double worst = 0.0;
  for (int u = 0; u < g.spec().linear_dim(); ++u) worst = std::max(worst, deviation(matrix_unit(g.spec(), u)));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) worst = std::max(worst, deviation(random_element(g.spec(), rng)));
  return worst;
}

Multiplicities multiplicities(const GNSData& g) {
  const BlockSpec& spec = g.spec();
  const ProjectorFamily fam = irreducible_projectors(g, 0);
  std::vector<Eigen::MatrixXcd> central;  // pi of the unit of each block
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    std::vector<Eigen::MatrixXcd> blocks;
    for (std::size_t l = 0; l < spec.num_blocks(); ++l) {
      const int n = spec.block_size(l);
      blocks.push_back(l == k ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n)) : Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(n, n)));
    }
    central.push_back(g.represent(AlgebraElement(spec, std::move(blocks))));
  }

  std::vector<int> counts(spec.num_blocks(), 0);
  for (const auto& p : fam.projectors) {
    std::size_t best = 0;
    double best_weight = -1.0;
    for (std::size_t k = 0; k < central.size(); ++k) {
      const double w = (central[k] * p).trace().real();
      if (w > best_weight) {
        best_weight = w;
        best = k;
      }
    }
    ++counts[best];
  }

  Multiplicities out;
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    if (counts[k] == 0) continue;
    out.components.push_back({k, spec.block_size(k), counts[k]});
    if (counts[k] > 1) out.unique = false;
  }
  return out;
}

}  // namespace gnsent
