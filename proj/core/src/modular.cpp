#include "gnsent/modular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gnsent/error.hpp"
#include "gnsent/random.hpp"
#include "linalg.hpp"

namespace gnsent {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kDiagonalTolerance = 1e-12;

Eigen::MatrixXcd hermitian_power(const Eigen::MatrixXcd& h, double exponent) {
  const auto eig = detail::hermitian_eigen(h);
  const Eigen::VectorXcd powered = eig.values.array().pow(exponent).cast<Complex>();
  return eig.vectors * powered.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

ModularData tomita_modular(const GNSData& g) {
  const BlockSpec& spec = g.spec();
  if (!spec.is_simple()) {
    throw Error(ErrorCode::Unsupported, "modular data is implemented for single-block algebras only");
  }
  if (!g.is_faithful()) {
    throw Error(ErrorCode::FaithfulnessRequired, "modular data needs a faithful state (null ideal of dimension " +
                                                     std::to_string(g.null_ideal().dim()) + ")");
  }
  const int n = spec.block_size(0);
  const int d = spec.linear_dim();

  // In unit coordinates a* has coefficients conj(c) with (i,j) and (j,i) swapped.
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) swap(j * n + i, i * n + j) = 1.0;

  ModularData m;
  m.dim = g.hilbert_dim();
  const Eigen::MatrixXcd& basis = g.quotient_basis();
  // x -> [ (Q x)* ] = C swap conj(Q) conj(x).
  m.s_matrix = g.coordinate_map() * swap * basis.conjugate();
  // <Sv, Sw> = <w, conj(S^dagger S) v>, so Delta = conj(S^dagger S).
  m.delta = detail::hermitian_part((m.s_matrix.adjoint() * m.s_matrix).conjugate());
  // S = J Delta^{1/2} means S_matrix = J_matrix conj(Delta^{1/2}).
  m.j_matrix = m.s_matrix * hermitian_power(m.delta, -0.5).conjugate();
  return m;
}

Eigen::MatrixXcd modular_conjugate(const ModularData& m, const Eigen::MatrixXcd& x) {
  return m.j_matrix * x.conjugate() * m.j_matrix.conjugate();
}

double ModularResiduals::max() const {
  return std::max({involution_action, j_squared, j_antiunitary, polar, cyclic_fixed, commutant});
}

ModularResiduals check_modular(const GNSData& g, const ModularData& m) {
  ModularResiduals r;
  const int d = m.dim;
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  const BlockSpec& spec = g.spec();
  const auto reps = g.unit_representatives();
  for (int u = 0; u < spec.linear_dim(); ++u) {
    const AlgebraElement e = matrix_unit(spec, u);
    const Eigen::VectorXcd lhs = apply_antilinear(m.s_matrix, g.class_of(e));
    r.involution_action = std::max(r.involution_action, (lhs - g.class_of(e.adjoint())).cwiseAbs().maxCoeff());
    const Eigen::MatrixXcd jaj = modular_conjugate(m, reps[static_cast<std::size_t>(u)]);
    for (const auto& b : reps) r.commutant = std::max(r.commutant, detail::max_abs(jaj * b - b * jaj));
  }
  r.j_squared = detail::max_abs(m.j_matrix * m.j_matrix.conjugate() - eye);
  r.j_antiunitary = detail::max_abs(m.j_matrix.adjoint() * m.j_matrix - eye);
  r.polar = detail::max_abs(m.s_matrix - m.j_matrix * hermitian_power(m.delta, 0.5).conjugate());
  r.cyclic_fixed = (apply_antilinear(m.j_matrix, g.cyclic()) - g.cyclic()).cwiseAbs().maxCoeff();
  return r;
}

Eigen::MatrixXcd gauge_unitary(const GNSData& g, const ModularData& m, const AlgebraElement& u) {
  if (!(u.spec() == g.spec())) {
    throw Error(ErrorCode::Shape, "gauge_unitary: element on " + u.spec().to_string() + ", GNS data on " +
                                      g.spec().to_string());
  }
  const double dev = max_abs_diff(u.adjoint() * u, AlgebraElement::identity(u.spec()));
  if (dev > kUnitaryTolerance) {
    std::ostringstream os;
    os << "element is not unitary (|g*g - 1| = " << dev << ")";
    throw Error(ErrorCode::InvalidUnitary, os.str());
  }
  return modular_conjugate(m, g.represent(u));
}

ProjectorFamily gauge_projectors(const GNSData& g, const ModularData& m, const AlgebraElement& u) {
  gauge_unitary(g, m, u);  // validates u
  const BlockSpec& spec = g.spec();
  const int n = spec.block_size(0);
  ProjectorFamily fam;
  fam.dim = m.dim;
  for (int k = 0; k < n; ++k) {
    const AlgebraElement rotated = u * matrix_unit(spec, 0, k, k) * u.adjoint();
    fam.projectors.push_back(modular_conjugate(m, g.represent(rotated)));
  }
  return fam;
}

DensityOperator gauge_density(const GNSData& g, const ModularData& m, const AlgebraElement& u) {
  return density_from_projectors(g, gauge_projectors(g, m, u));
}

AlgebraElement haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidSpec, "haar_unitary needs n >= 1");
  Rng rng(seed);
  const Eigen::MatrixXcd z = random_complex_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const Complex rii = r(i, i);
    const double mod = std::abs(rii);
    q.col(i) *= mod > 0.0 ? rii / mod : Complex(1.0);
  }
  return {BlockSpec({n}), {std::move(q)}};
}

AlgebraElement unitary_from_parameters(int n, const Eigen::VectorXd& params) {
  if (params.size() != static_cast<Eigen::Index>(n) * n) {
    throw Error(ErrorCode::Shape, "expected " + std::to_string(n * n) + " Hermitian parameters");
  }
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index p = 0;
  for (int k = 0; k < n; ++k) h(k, k) += params(p++);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const double sym = params(p++) * r;
      const double asym = params(p++) * r;
      h(k, l) += Complex(sym, asym);
      h(l, k) += Complex(sym, -asym);
    }
  }
  const auto eig = detail::hermitian_eigen(h);
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k) phases(k) = std::polar(1.0, eig.values(k));
  return {BlockSpec({n}), {eig.vectors * phases.asDiagonal() * eig.vectors.adjoint()}};
}

bool GaugeReport::within_bounds(double tol) const {
  double top = max;
  if (refinement) top = std::max(top, refinement->entropy);
  return min >= baseline_entropy - tol && top <= upper_bound + tol;
}

std::uint64_t scan_sample_seed(std::uint64_t seed, std::size_t index) noexcept {
  return derive_seed(seed, static_cast<std::uint64_t>(index));
}

GaugeReport entropy_scan(const GNSData& g, const ModularData& m, std::size_t samples, std::uint64_t seed,
                         bool refine) {
  const BlockSpec& spec = g.spec();
  const Eigen::MatrixXcd& sigma = g.state().weight(0);
  const Eigen::MatrixXcd off_diagonal = sigma - Eigen::MatrixXcd(sigma.diagonal().asDiagonal());
  if (detail::max_abs(off_diagonal) > kDiagonalTolerance) {
    throw Error(ErrorCode::Unsupported, "entropy_scan needs a state that is diagonal in the matrix-unit basis");
  }
  const int n = spec.block_size(0);
  const auto entropy_at = [&](const AlgebraElement& u) { return von_neumann_entropy(gauge_density(g, m, u)); };

  GaugeReport report;
  report.seed = seed;
  report.samples = samples;
  report.upper_bound = std::log(static_cast<double>(n));
  report.baseline_entropy = entropy_at(AlgebraElement::identity(spec));
  report.entropies.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    report.entropies.push_back(entropy_at(haar_unitary(n, scan_sample_seed(seed, i))));
  }
  if (samples > 0) {
    const auto [lo, hi] = std::minmax_element(report.entropies.begin(), report.entropies.end());
    report.min = *lo;
    report.max = *hi;
    report.argmin = static_cast<std::size_t>(lo - report.entropies.begin());
    report.argmax = static_cast<std::size_t>(hi - report.entropies.begin());
  } else {
    report.min = report.max = report.baseline_entropy;
  }

  if (refine && samples > 0) {
    const AlgebraElement start = haar_unitary(n, scan_sample_seed(seed, report.argmax));
    GaugeRefinement ref;
    ref.start_sample = report.argmax;
    ref.parameters = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * n);
    ref.entropy = report.max;
    constexpr int kMaxEvaluations = 20000;
    const auto objective = [&](const Eigen::VectorXd& p) {
      ++ref.evaluations;
      return entropy_at(start * unitary_from_parameters(n, p));
    };
    for (double step = 0.5; step >= 1e-4 && ref.evaluations < kMaxEvaluations; step *= 0.5) {
      bool improved = true;
      while (improved && ref.evaluations < kMaxEvaluations) {
        improved = false;
        for (Eigen::Index c = 0; c < ref.parameters.size(); ++c) {
          for (const double dir : {1.0, -1.0}) {
            Eigen::VectorXd trial = ref.parameters;
            trial(c) += dir * step;
            const double value = objective(trial);
            if (value > ref.entropy) {
              ref.entropy = value;
              ref.parameters = std::move(trial);
              improved = true;
              break;
            }
          }
        }
      }
    }
    report.refinement = std::move(ref);
  }
  return report;
}

}  // namespace gnsent
