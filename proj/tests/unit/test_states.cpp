#include <doctest.h>

#include <cmath>

#include "test_support.hpp"

using namespace gnsent;
using gnsent::test::max_abs;
using gnsent::test::random_bipartite;
using gnsent::test::sorted_eigenvalues;

namespace {

// Reshape psi into the dim_a x dim_b coefficient matrix M; then
// rho_A = M M^dagger and rho_B = M^T conj(M).
Eigen::MatrixXcd reshape(const BipartiteVector& v) {
  Eigen::MatrixXcd m(v.dim_a, v.dim_b);
  for (int i = 0; i < v.dim_a; ++i)
    for (int j = 0; j < v.dim_b; ++j) m(i, j) = v.amplitudes(i * v.dim_b + j);
  return m;
}

Eigen::MatrixXcd rho_a_oracle(const BipartiteVector& v) {
  const Eigen::MatrixXcd m = reshape(v);
  return m * m.adjoint();
}

Eigen::MatrixXcd rho_b_oracle(const BipartiteVector& v) {
  const Eigen::MatrixXcd m = reshape(v);
  return m.transpose() * m.conjugate();
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Validation;
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("evaluate on the diagonal state of M_2") {
  const State omega = diagonal_state({0.25, 0.75});
  const BlockSpec& m2 = omega.spec();
  CHECK(std::abs(evaluate(omega, AlgebraElement::identity(m2)) - Complex(1.0)) <= 1e-15);
  CHECK(std::abs(evaluate(omega, matrix_unit(m2, 0, 0, 0)) - Complex(0.25)) <= 1e-15);
  CHECK(std::abs(evaluate(omega, matrix_unit(m2, 0, 1, 1)) - Complex(0.75)) <= 1e-15);
  CHECK(std::abs(evaluate(omega, matrix_unit(m2, 0, 0, 1))) == 0.0);
}

TEST_CASE("restricted psi_lambda state acts as lambda<+|a|+> + (1-lambda)<-|a|->") {
  const double lambda = 0.3;
  const BipartiteVector psi = psi_lambda(lambda);
  const State omega = vector_state(psi);
  const BlockSpec m2({2});
  const TensorProduct tp = tensor(m2, m2);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const AlgebraElement alpha = random_element(m2, rng);
    const Complex lhs = evaluate(omega, tp(alpha, AlgebraElement::identity(m2)));
    const Complex rhs = lambda * alpha.block(0)(0, 0) + (1.0 - lambda) * alpha.block(0)(1, 1);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    // direct inner product <psi| O |psi>
    const Complex direct = psi.amplitudes.dot(tp(alpha, AlgebraElement::identity(m2)).block(0) * psi.amplitudes);
    CHECK(std::abs(lhs - direct) <= 1e-12);
  }
}

TEST_CASE("states are positive and Hermitian functionals") {
  Rng rng(2);
  std::vector<State> states = {diagonal_state({0.25, 0.75}), tracial_state(3), vector_state(psi_lambda(0.3)),
                               gnsent::test::random_faithful_state(BlockSpec({2, 3}), rng)};
  for (const State& omega : states) {
    for (int t = 0; t < 200; ++t) {
      const AlgebraElement a = random_element(omega.spec(), rng);
      const Complex pos = evaluate(omega, a.adjoint() * a);
      CHECK(pos.real() >= -1e-12);
      CHECK(std::abs(pos.imag()) <= 1e-12);
      CHECK(std::abs(evaluate(omega, a.adjoint()) - std::conj(evaluate(omega, a))) <= 1e-12);
    }
  }
}

TEST_CASE("state validation") {
  const BlockSpec m2({2});
  SUBCASE("trace 0.9 is not normalized") {
    try {
      State(m2, {Eigen::MatrixXcd(Eigen::Vector2cd(0.4, 0.5).asDiagonal())});
      FAIL("expected invalid state");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidState);
      CHECK(std::string(e.what()).find("state not normalized") != std::string::npos);
    }
  }
  SUBCASE("clearly negative weight is rejected") {
    CHECK(code_of([&] { State(m2, {Eigen::MatrixXcd(Eigen::Vector2cd(1.001, -0.001).asDiagonal())}); }) ==
          ErrorCode::InvalidState);
  }
  SUBCASE("round-off negativity is clamped") {
    const State s(m2, {Eigen::MatrixXcd(Eigen::Vector2cd(1.0 + 5e-13, -5e-13).asDiagonal())});
    CHECK(sorted_eigenvalues(s.weight(0)).back() >= 0.0);
  }
  SUBCASE("non-Hermitian weight") {
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
    w(0, 1) = 0.1;
    CHECK(code_of([&] { State(m2, {w}); }) == ErrorCode::InvalidState);
  }
  SUBCASE("wrong number of weights") {
    CHECK(code_of([&] { State(BlockSpec({2, 2}), {Eigen::MatrixXcd::Identity(2, 2) * 0.5}); }) ==
          ErrorCode::Shape);
  }
  SUBCASE("evaluate on a foreign spec") {
    CHECK(code_of([&] { evaluate(tracial_state(2), AlgebraElement::identity(BlockSpec({3}))); }) ==
          ErrorCode::Shape);
  }
}

TEST_CASE("vector states are pure") {
  const BlockSpec m4({4});
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(4);
  e0(0) = 1.0;
  const State s0 = vector_state(e0, m4);
  CHECK(max_abs(s0.weight(0) - matrix_unit(m4, 0, 0, 0).block(0)) == 0.0);

  const BipartiteVector psi = psi_lambda(0.3);
  const State s = vector_state(psi);
  // |+,-><+,-| is the unit e_11 of M_4 (index 1 in the product basis).
  const Complex direct = std::norm(psi.amplitudes(1));
  CHECK(std::abs(evaluate(s, matrix_unit(m4, 0, 1, 1)) - direct) <= 1e-15);
  CHECK(std::abs(evaluate(s, matrix_unit(m4, 0, 1, 1)) - Complex(0.3)) <= 1e-15);

  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const State p = vector_state(random_unit_vector(4, rng), m4);
    const auto ev = sorted_eigenvalues(p.weight(0));
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ev[1]) <= 1e-12);
  }

  CHECK(code_of([&] { vector_state(Eigen::VectorXcd::Ones(4), m4); }) == ErrorCode::InvalidVector);
  CHECK(code_of([&] { vector_state(e0, BlockSpec({3})); }) == ErrorCode::Shape);
}

TEST_CASE("psi_lambda amplitudes") {
  const auto one = psi_lambda(1.0).amplitudes;
  CHECK(std::abs(one(1) - Complex(1.0)) == 0.0);
  CHECK(one.cwiseAbs().sum() == 1.0);

  const auto half = psi_lambda(0.5).amplitudes;
  CHECK(std::abs(half(1) - Complex(1.0 / std::sqrt(2.0))) <= 1e-15);
  CHECK(std::abs(half(2) - Complex(1.0 / std::sqrt(2.0))) <= 1e-15);

  const auto p = psi_lambda(0.3).amplitudes;
  CHECK(std::abs(p(0)) == 0.0);
  CHECK(p(1).real() == doctest::Approx(0.547723).epsilon(1e-6));
  CHECK(p(2).real() == doctest::Approx(0.836660).epsilon(1e-6));
  CHECK(std::abs(p(3)) == 0.0);

  CHECK(code_of([] { psi_lambda(-0.1); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { psi_lambda(1.5); }) == ErrorCode::OutOfRange);
}

TEST_CASE("restriction to the left factor") {
  const BlockSpec m2({2});
  const State omega0 = restrict(vector_state(psi_lambda(0.3)), embed_left_factor(m2, m2));
  CHECK(std::abs(evaluate(omega0, matrix_unit(m2, 0, 0, 0)) - Complex(0.3)) <= 1e-15);
  CHECK(std::abs(evaluate(omega0, matrix_unit(m2, 0, 1, 1)) - Complex(0.7)) <= 1e-15);

  Rng rng(6);
  const State omega = gnsent::test::random_faithful_state(BlockSpec({2, 3}), rng);
  const State same = restrict(omega, identity_embedding(omega.spec()));
  for (std::size_t k = 0; k < omega.spec().num_blocks(); ++k) CHECK(max_abs(same.weight(k) - omega.weight(k)) == 0.0);
}

TEST_CASE("restriction commutes with evaluation") {
  Rng rng(8);
  const BlockSpec a({2});
  const BlockSpec b({3});
  const Embedding iota = embed_left_factor(a, b);
  const State omega = vector_state(random_unit_vector(6, rng), iota.target());
  const State omega0 = restrict(omega, iota);
  for (int t = 0; t < 100; ++t) {
    const AlgebraElement x = random_element(a, rng);
    CHECK(std::abs(evaluate(omega0, x) - evaluate(omega, iota(x))) <= 1e-12);
  }
  const Embedding right = embed_right_factor(a, b);
  const State omega_b = restrict(omega, right);
  for (int t = 0; t < 20; ++t) {
    const AlgebraElement y = random_element(b, rng);
    CHECK(std::abs(evaluate(omega_b, y) - evaluate(omega, right(y))) <= 1e-12);
  }
}

TEST_CASE("restrict rejects mismatched or invalid embeddings") {
  const BlockSpec m2({2});
  const BlockSpec m4({4});
  CHECK(code_of([&] { restrict(tracial_state(3), embed_left_factor(m2, m2)); }) == ErrorCode::Shape);
  const Embedding zero(m2, m4, std::vector<AlgebraElement>(4, AlgebraElement::zero(m4)));
  CHECK(code_of([&] { restrict(tracial_state(4), zero); }) == ErrorCode::InvalidEmbedding);
}

TEST_CASE("partial trace") {
  const BipartiteVector psi = psi_lambda(0.3);
  const Eigen::MatrixXcd rho_a = partial_trace(psi, Subsystem::A);
  CHECK(max_abs(rho_a - Eigen::MatrixXcd(Eigen::Vector2cd(0.3, 0.7).asDiagonal())) <= 1e-15);

  const auto spec_a = sorted_eigenvalues(rho_a);
  const auto spec_b = sorted_eigenvalues(partial_trace(psi, Subsystem::B));
  CHECK(spec_a[0] == doctest::Approx(0.7));
  CHECK(spec_a[1] == doctest::Approx(0.3));
  CHECK(spec_b[0] == doctest::Approx(0.7));
  CHECK(spec_b[1] == doctest::Approx(0.3));

  // product vector |+> (x) (|+> + |->)/sqrt 2 has a pure reduced state
  Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(4);
  prod(0) = prod(1) = 1.0 / std::sqrt(2.0);
  const auto ev = sorted_eigenvalues(partial_trace(BipartiteVector(2, 2, prod), Subsystem::A));
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(std::abs(ev[1]) <= 1e-15);

  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const BipartiteVector v = random_bipartite(2 + t % 3, 3, rng);
    CHECK(max_abs(partial_trace(v, Subsystem::A) - rho_a_oracle(v)) <= 1e-14);
    CHECK(max_abs(partial_trace(v, Subsystem::B) - rho_b_oracle(v)) <= 1e-14);
  }

  CHECK(code_of([] { partial_trace(Eigen::MatrixXcd::Identity(5, 5) / 5.0, 2, 2, Subsystem::A); }) ==
        ErrorCode::Shape);
  CHECK(code_of([] { partial_trace(Eigen::MatrixXcd::Identity(4, 4), 2, 2, Subsystem::A); }) ==
        ErrorCode::InvalidDensity);
  CHECK(code_of([] { BipartiteVector(2, 3, Eigen::VectorXcd::Zero(5)); }) == ErrorCode::InvalidVector);
}

TEST_CASE("Schmidt decomposition") {
  SUBCASE("psi_lambda with lambda = 0.3") {
    const auto s = schmidt(psi_lambda(0.3));
    CHECK(s.coefficients(0) == doctest::Approx(std::sqrt(0.7)).epsilon(1e-12));
    CHECK(s.coefficients(1) == doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));
  }
  SUBCASE("product vector") {
    Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(4);
    prod(2) = 1.0;
    const auto s = schmidt(BipartiteVector(2, 2, prod));
    CHECK(s.coefficients(0) == doctest::Approx(1.0));
    CHECK(std::abs(s.coefficients(1)) <= 1e-15);
  }
  SUBCASE("symmetric case") {
    const auto s = schmidt(psi_lambda(0.5));
    CHECK(s.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(s.coefficients(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("random vectors reconstruct and have equal reduced spectra") {
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
      const int da = 2 + t % 3;
      const int db = 2 + (t / 3) % 3;
      const BipartiteVector v = random_bipartite(da, db, rng);
      const auto s = schmidt(v);
      CHECK(s.coefficients.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
      for (Eigen::Index k = 1; k < s.coefficients.size(); ++k) CHECK(s.coefficients(k - 1) >= s.coefficients(k));
      CHECK((s.reconstruct() - v.amplitudes).norm() <= 1e-10);

      auto ea = sorted_eigenvalues(partial_trace(v, Subsystem::A));
      auto eb = sorted_eigenvalues(partial_trace(v, Subsystem::B));
      const std::size_t len = std::max(ea.size(), eb.size());
      ea.resize(len, 0.0);
      eb.resize(len, 0.0);
      for (std::size_t k = 0; k < len; ++k) {
        CHECK(std::abs(ea[k] - eb[k]) <= 1e-10);
        const double sk = k < static_cast<std::size_t>(s.coefficients.size()) ? s.coefficients(k) : 0.0;
        CHECK(std::abs(ea[k] - sk * sk) <= 1e-10);
      }
    }
  }
}

TEST_CASE("restriction agrees with partial trace") {
  CHECK(restriction_matches_partial_trace(psi_lambda(0.3)) <= 1e-12);
  CHECK(restriction_matches_partial_trace(psi_lambda(1.0)) <= 1e-12);
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    CHECK(restriction_matches_partial_trace(random_bipartite(2 + t % 2, 2 + t % 3, rng)) <= 1e-12);
  }
}

}  // TEST_SUITE
