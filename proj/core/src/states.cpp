#include "gnsent/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnsent/error.hpp"
#include "linalg.hpp"

namespace gnsent {

namespace {

constexpr double kHermiticityTolerance = 1e-10;

// Clamps eigenvalues in (-tol, 0) to zero. Returns the input unchanged when no
// clamping is needed so that exact inputs stay bit-exact.
Eigen::MatrixXcd clamp_psd(const Eigen::MatrixXcd& w, std::size_t k) {
  const auto eig = detail::hermitian_eigen(w);
  const double min_ev = eig.values.size() ? eig.values(eig.values.size() - 1) : 0.0;
  if (min_ev >= 0.0) return w;
  if (min_ev < -kPositivityTolerance) {
    std::ostringstream os;
    os << "state not positive: weight " << k << " has eigenvalue " << min_ev;
    throw Error(ErrorCode::InvalidState, os.str());
  }
  Eigen::VectorXd clamped = eig.values.cwiseMax(0.0);
  return eig.vectors * clamped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

State::State(BlockSpec spec, std::vector<Eigen::MatrixXcd> weights)
    : spec_(std::move(spec)), weights_(std::move(weights)) {
  if (weights_.size() != spec_.num_blocks()) {
    throw Error(ErrorCode::Shape, "state has " + std::to_string(weights_.size()) +
                                      " weights, spec " + spec_.to_string() + " expects " +
                                      std::to_string(spec_.num_blocks()));
  }
  Complex total = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const int n = spec_.block_size(k);
    auto& w = weights_[k];
    if (w.rows() != n || w.cols() != n) {
      throw Error(ErrorCode::Shape, "weight " + std::to_string(k) + " must be " + std::to_string(n) +
                                        "x" + std::to_string(n));
    }
    const double herm = detail::max_abs(w - w.adjoint());
    if (herm > kHermiticityTolerance) {
      throw Error(ErrorCode::InvalidState,
                  "state not Hermitian: weight " + std::to_string(k) + " deviates by " + std::to_string(herm));
    }
    w = clamp_psd(w, k);
    total += w.trace();
  }
  if (std::abs(total - Complex(1.0)) > kNormalizationTolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "state not normalized: total trace " << total.real();
    throw Error(ErrorCode::InvalidState, os.str());
  }
}

AlgebraElement State::density_element() const { return {spec_, weights_}; }

bool State::is_faithful(double rel_tol) const {
  for (const auto& w : weights_) {
    if (detail::numerical_rank(w, rel_tol) < w.rows()) return false;
  }
  return true;
}

State diagonal_state(const std::vector<double>& lambda) {
  const auto n = static_cast<int>(lambda.size());
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) w(i, i) = lambda[static_cast<std::size_t>(i)];
  return {BlockSpec({n}), {std::move(w)}};
}

State tracial_state(int n) {
  return {BlockSpec({n}), {Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n)}};
}

Complex evaluate(const State& omega, const AlgebraElement& a) {
  if (!(omega.spec() == a.spec())) {
    throw Error(ErrorCode::Shape, "evaluate: state on " + omega.spec().to_string() +
                                      ", element on " + a.spec().to_string());
  }
  Complex sum = 0.0;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    sum += (omega.weight(k).transpose().cwiseProduct(a.block(k))).sum();
  }
  return sum;
}

BipartiteVector::BipartiteVector(int da, int db, Eigen::VectorXcd amps)
    : dim_a(da), dim_b(db), amplitudes(std::move(amps)) {
  if (dim_a < 1 || dim_b < 1 || amplitudes.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw Error(ErrorCode::InvalidVector, "bipartite vector length " + std::to_string(amplitudes.size()) +
                                              " does not factor as " + std::to_string(dim_a) + "x" +
                                              std::to_string(dim_b));
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidVector, "vector is not normalized");
  }
}

BipartiteVector psi_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "psi_lambda requires 0 <= lambda <= 1");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(1) = std::sqrt(lambda);        // |+,->
  v(2) = std::sqrt(1.0 - lambda);  // |-,+>
  return {2, 2, std::move(v)};
}

State vector_state(const Eigen::VectorXcd& v, const BlockSpec& spec) {
  if (!spec.is_simple()) {
    throw Error(ErrorCode::Unsupported, "vector states need a single-block algebra");
  }
  if (v.size() != spec.block_size(0)) {
    throw Error(ErrorCode::Shape, "vector length " + std::to_string(v.size()) +
                                      " does not match block size " + std::to_string(spec.block_size(0)));
  }
  if (std::abs(v.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidVector, "vector is not normalized");
  }
  return {spec, {v * v.adjoint()}};
}

State vector_state(const BipartiteVector& v) {
  return vector_state(v.amplitudes, BlockSpec({v.dim_a * v.dim_b}));
}

State restrict(const State& omega, const Embedding& iota) {
  if (!(iota.target() == omega.spec())) {
    throw Error(ErrorCode::Shape, "restrict: embedding target " + iota.target().to_string() +
                                      " does not match state on " + omega.spec().to_string());
  }
  const auto violations = check_embedding(iota);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidEmbedding,
                "restrict: embedding is not a unital *-homomorphism (" +
                    std::string(to_string(violations.front().kind)) + ": " + violations.front().detail + ")");
  }
  // omega_0(e_ij^(k)) = trace(sigma0_k e_ij) = sigma0_k(j, i).
  const BlockSpec& src = iota.source();
  std::vector<Eigen::MatrixXcd> weights;
  for (int n : src.blocks()) weights.push_back(Eigen::MatrixXcd::Zero(n, n));
  for (int u = 0; u < src.linear_dim(); ++u) {
    const auto l = src.unit_label(u);
    weights[l.block](l.col, l.row) = evaluate(omega, iota.images()[static_cast<std::size_t>(u)]);
  }
  return {src, std::move(weights)};
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
      rho.cols() != rho.rows()) {
    throw Error(ErrorCode::Shape, "partial_trace: a " + std::to_string(rho.rows()) + "x" +
                                      std::to_string(rho.cols()) + " matrix does not factor as " +
                                      std::to_string(dim_a) + "x" + std::to_string(dim_b));
  }
  if (detail::max_abs(rho - rho.adjoint()) > 1e-10 || std::abs(rho.trace() - Complex(1.0)) > 1e-10) {
    throw Error(ErrorCode::InvalidDensity, "partial_trace: input is not a unit-trace Hermitian matrix");
  }
  if (keep == Subsystem::A) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int ip = 0; ip < dim_a; ++ip)
        for (int j = 0; j < dim_b; ++j) out(i, ip) += rho(i * dim_b + j, ip * dim_b + j);
    return out;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_b, dim_b);
  for (int j = 0; j < dim_b; ++j)
    for (int jp = 0; jp < dim_b; ++jp)
      for (int i = 0; i < dim_a; ++i) out(j, jp) += rho(i * dim_b + j, i * dim_b + jp);
  return out;
}

Eigen::MatrixXcd partial_trace(const BipartiteVector& v, Subsystem keep) {
  return partial_trace(v.amplitudes * v.amplitudes.adjoint(), v.dim_a, v.dim_b, keep);
}

Eigen::VectorXcd SchmidtDecomposition::reconstruct() const {
  const Eigen::Index da = left.rows();
  const Eigen::Index db = right.rows();
  Eigen::MatrixXcd m = left * coefficients.cast<Complex>().asDiagonal() * right.transpose();
  Eigen::VectorXcd out(da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) out(i * db + j) = m(i, j);
  return out;
}

SchmidtDecomposition schmidt(const BipartiteVector& v) {
  Eigen::MatrixXcd m(v.dim_a, v.dim_b);
  for (int i = 0; i < v.dim_a; ++i)
    for (int j = 0; j < v.dim_b; ++j) m(i, j) = v.amplitudes(i * v.dim_b + j);
  // m = U S V^dagger, so psi = sum_k s_k u_k (x) conj(v_k).
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

double restriction_matches_partial_trace(const BipartiteVector& v) {
  const BlockSpec a({v.dim_a});
  const BlockSpec b({v.dim_b});
  const State omega0 = restrict(vector_state(v), embed_left_factor(a, b));
  const Eigen::MatrixXcd rho_a = partial_trace(v, Subsystem::A);
  double dev = 0.0;
  for (int u = 0; u < a.linear_dim(); ++u) {
    const AlgebraElement alpha = matrix_unit(a, u);
    const Complex via_trace = (rho_a * alpha.block(0)).trace();
    dev = std::max(dev, std::abs(evaluate(omega0, alpha) - via_trace));
  }
  return dev;
}

}  // namespace gnsent
