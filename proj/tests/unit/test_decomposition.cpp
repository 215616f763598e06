#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"

using namespace gnsent;
using gnsent::test::max_abs;
using gnsent::test::random_faithful_state;
using gnsent::test::sorted_eigenvalues;

namespace {

int rank_of(const Eigen::MatrixXcd& p) {
  int r = 0;
  for (double x : sorted_eigenvalues(p))
    if (x > 0.5) ++r;
  return r;
}

// Eigenvalues of every sigma_k, padded with zeros to `len`, descending.
std::vector<double> weight_spectrum(const State& omega, std::size_t len) {
  std::vector<double> out;
  for (const auto& w : omega.weights())
    for (double x : sorted_eigenvalues(w)) out.push_back(x);
  out.resize(std::max(len, out.size()), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

State pure_m2() {
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(2);
  e0(0) = 1.0;
  return vector_state(e0, BlockSpec({2}));
}

ProjectorFamily perturbed(const ProjectorFamily& fam, double eps) {
  ProjectorFamily out = fam;
  out.projectors[0](0, 0) += eps;
  return out;
}

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("commutant dimensions") {
  Rng rng(31);
  CHECK(commutant_basis(build_gns(diagonal_state({0.25, 0.75}))).size() == 4);
  CHECK(commutant_basis(build_gns(random_faithful_state(BlockSpec({3}), rng))).size() == 9);
  CHECK(commutant_basis(build_gns(pure_m2())).size() == 1);
  CHECK(commutant_basis(build_gns(random_faithful_state(BlockSpec({2, 2}), rng))).size() == 8);
  CHECK(commutant_basis(build_gns(random_faithful_state(BlockSpec({2, 3}), rng))).size() == 13);
  CHECK(commutant_basis(build_gns(tracial_state(1))).size() == 1);
}

TEST_CASE("commutant basis commutes with every matrix unit and is orthonormal") {
  Rng rng(32);
  const GNSData g = build_gns(random_faithful_state(BlockSpec({1, 2}), rng));
  const auto basis = commutant_basis(g);
  CHECK(basis.size() == 1 + 4);
  const auto reps = g.unit_representatives();
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (const auto& r : reps) CHECK(max_abs(basis[a] * r - r * basis[a]) <= 1e-10);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Complex ip = (basis[a].adjoint() * basis[b]).trace();
      CHECK(std::abs(ip - Complex(a == b ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("M_2 with a faithful diagonal state") {
  const GNSData g = build_gns(diagonal_state({0.25, 0.75}));
  const ProjectorFamily fam = irreducible_projectors(g, 0);
  REQUIRE(fam.projectors.size() == 2);
  for (const auto& p : fam.projectors) CHECK(rank_of(p) == 2);

  const FamilyResiduals res = check_family(g, fam);
  CHECK(res.max_structural() <= 1e-10);
  CHECK(res.all_irreducible());

  const DensityOperator rho = density_from_projectors(g, fam);
  const auto ev = sorted_eigenvalues(rho.matrix());
  CHECK(ev[0] == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(ev[1] == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(std::abs(ev[2]) <= 1e-10);
  CHECK(std::abs(ev[3]) <= 1e-10);
  CHECK(verify_pairing(g, rho, g.state(), 200, 1) <= 1e-10);
}

TEST_CASE("pure state gives the trivial family") {
  const GNSData g = build_gns(pure_m2());
  const ProjectorFamily fam = irreducible_projectors(g, 0);
  REQUIRE(fam.projectors.size() == 1);
  CHECK(max_abs(fam.projectors[0] - Eigen::MatrixXcd::Identity(2, 2)) <= 1e-12);
  const DensityOperator rho = density_from_projectors(g, fam);
  CHECK(sorted_eigenvalues(rho.matrix())[0] == doctest::Approx(1.0));
}

TEST_CASE("tracial state spreads evenly") {
  const GNSData g = build_gns(tracial_state(2));
  const ProjectorFamily fam = irreducible_projectors(g, 5);
  REQUIRE(fam.projectors.size() == 2);
  const auto ev = sorted_eigenvalues(density_from_projectors(g, fam).matrix());
  CHECK(ev[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("natural families reproduce the weight spectrum") {
  Rng rng(33);
  for (const BlockSpec& spec : {BlockSpec({2}), BlockSpec({3}), BlockSpec({2, 3}), BlockSpec({1, 2, 2})}) {
    for (int t = 0; t < 4; ++t) {
      const State omega = random_faithful_state(spec, rng);
      const GNSData g = build_gns(omega);
      const ProjectorFamily fam = irreducible_projectors(g, static_cast<std::uint64_t>(t));
      const FamilyResiduals res = check_family(g, fam);
      CHECK(res.max_structural() <= 1e-10);
      CHECK(res.all_irreducible());

      const DensityOperator rho = density_from_projectors(g, fam);
      const auto ev = sorted_eigenvalues(rho.matrix());
      const auto expected = weight_spectrum(omega, ev.size());
      for (std::size_t k = 0; k < ev.size(); ++k) CHECK(std::abs(ev[k] - expected[k]) <= 1e-9);
      CHECK(verify_pairing(g, rho, omega, 100, 7) <= 1e-10);
    }
  }
}

TEST_CASE("random-mode families are valid for every seed") {
  Rng rng(34);
  std::vector<State> states = {diagonal_state({0.25, 0.75}), tracial_state(3),
                               random_faithful_state(BlockSpec({2, 2}), rng), pure_m2()};
  for (const State& omega : states) {
    const GNSData g = build_gns(omega);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ProjectorFamily fam = irreducible_projectors(g, seed, DecompositionMode::Random);
      const FamilyResiduals res = check_family(g, fam);
      CHECK(res.max_structural() <= 1e-10);
      CHECK(res.all_irreducible());
      const DensityOperator rho = density_from_projectors(g, fam);
      CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) <= 1e-10);
      CHECK(verify_pairing(g, rho, omega, 50, seed) <= 1e-10);
    }
  }
}

TEST_CASE("projector ranks equal the irrep dimensions") {
  Rng rng(35);
  const GNSData g = build_gns(random_faithful_state(BlockSpec({2, 3}), rng));
  const ProjectorFamily fam = irreducible_projectors(g, 2);
  CHECK(fam.projectors.size() == 5);
  std::vector<int> ranks;
  for (const auto& p : fam.projectors) ranks.push_back(rank_of(p));
  std::sort(ranks.begin(), ranks.end());
  CHECK(ranks == std::vector<int>{2, 2, 3, 3, 3});
}

TEST_CASE("the maximally mixed operator fails the pairing") {
  const GNSData g = build_gns(diagonal_state({0.25, 0.75}));
  const double dev = verify_pairing(g, DensityOperator::maximally_mixed(4), g.state(), 0, 0);
  CHECK(dev > 0.01);
  CHECK(dev == doctest::Approx(0.25));
}

TEST_CASE("multiplicities") {
  Rng rng(36);
  SUBCASE("faithful M_n") {
    for (int n : {2, 3}) {
      const auto m = multiplicities(build_gns(random_faithful_state(BlockSpec({n}), rng)));
      REQUIRE(m.components.size() == 1);
      CHECK(m.components[0].irrep_dim == n);
      CHECK(m.components[0].multiplicity == n);
      CHECK_FALSE(m.unique);
    }
  }
  SUBCASE("pure state on M_2") {
    const auto m = multiplicities(build_gns(pure_m2()));
    REQUIRE(m.components.size() == 1);
    CHECK(m.components[0].irrep_dim == 2);
    CHECK(m.components[0].multiplicity == 1);
    CHECK(m.unique);
  }
  SUBCASE("faithful M_2 + M_3") {
    const auto m = multiplicities(build_gns(random_faithful_state(BlockSpec({2, 3}), rng)));
    REQUIRE(m.components.size() == 2);
    CHECK(m.components[0].block == 0);
    CHECK(m.components[0].irrep_dim == 2);
    CHECK(m.components[0].multiplicity == 2);
    CHECK(m.components[1].block == 1);
    CHECK(m.components[1].irrep_dim == 3);
    CHECK(m.components[1].multiplicity == 3);
  }
  SUBCASE("a block with zero weight does not appear") {
    const State omega(BlockSpec({2, 1}), {Eigen::MatrixXcd::Identity(2, 2) * 0.5, Eigen::MatrixXcd::Zero(1, 1)});
    const auto m = multiplicities(build_gns(omega));
    REQUIRE(m.components.size() == 1);
    CHECK(m.components[0].block == 0);
  }
}

TEST_CASE("decompositions are reproducible") {
  const GNSData g = build_gns(tracial_state(3));
  for (const auto mode : {DecompositionMode::Natural, DecompositionMode::Random}) {
    const ProjectorFamily a = irreducible_projectors(g, 42, mode);
    const ProjectorFamily b = irreducible_projectors(g, 42, mode);
    REQUIRE(a.projectors.size() == b.projectors.size());
    for (std::size_t k = 0; k < a.projectors.size(); ++k) CHECK(max_abs(a.projectors[k] - b.projectors[k]) == 0.0);
  }
  // degenerate spectrum: the seed picks the split
  const ProjectorFamily s1 = irreducible_projectors(g, 1);
  const ProjectorFamily s2 = irreducible_projectors(g, 2);
  CHECK(max_abs(s1.projectors[0] - s2.projectors[0]) > 1e-3);
}

TEST_CASE("invalid families are rejected") {
  const GNSData g = build_gns(diagonal_state({0.25, 0.75}));
  const ProjectorFamily fam = irreducible_projectors(g, 0);
  const auto code_of = [&](const ProjectorFamily& f) {
    try {
      density_from_projectors(g, f);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Validation;
  };
  CHECK(code_of(perturbed(fam, 1e-3)) == ErrorCode::InvalidFamily);
  ProjectorFamily incomplete = fam;
  incomplete.projectors.pop_back();
  CHECK(code_of(incomplete) == ErrorCode::InvalidFamily);
  CHECK(code_of(ProjectorFamily{3, {Eigen::MatrixXcd::Identity(3, 3)}}) == ErrorCode::InvalidFamily);
  CHECK_THROWS_AS(check_family(g, ProjectorFamily{3, {Eigen::MatrixXcd::Identity(3, 3)}}), Error);

  // a complete, orthogonal family that is not invariant
  ProjectorFamily coords{4, {}};
  for (int k = 0; k < 4; ++k) coords.projectors.push_back(gnsent::test::unit_matrix(4, k, k));
  const FamilyResiduals res = check_family(g, coords);
  CHECK(res.completeness <= 1e-15);
  CHECK(res.invariance > 0.1);
}

}  // TEST_SUITE
