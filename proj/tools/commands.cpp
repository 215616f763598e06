#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <locale>
#include <ostream>
#include <sstream>

namespace gnsent::cli {

namespace {

std::ostringstream classic_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  return os;
}

std::string join(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_number(v(i));
  }
  return s;
}

void write_gram_csv(const Eigen::MatrixXcd& gram, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Validation, "--dump-gram: cannot write " + path);
  for (Eigen::Index r = 0; r < gram.rows(); ++r) {
    for (Eigen::Index c = 0; c < gram.cols(); ++c) {
      if (c) f << ',';
      f << format_number(gram(r, c).real()) << ',' << format_number(gram(r, c).imag());
    }
    f << '\n';
  }
}

int cmd_gns(const Scenario& sc, const Flags& fl, double cutoff, std::ostream& out) {
  const State omega = sc.analysed_state();
  const GNSData g = build_gns(omega, cutoff);
  out << "algebra: " << omega.spec().to_string() << '\n';
  out << "hilbert_dim: " << g.hilbert_dim() << '\n';
  out << "null_dim: " << g.null_ideal().dim() << '\n';
  out << "gram_spectrum: " << join(g.gram_spectrum()) << '\n';
  if (fl.verbose) {
    out << "null_cutoff: " << format_number(cutoff) << '\n';
    out << "left_ideal_deviation: " << format_number(g.null_ideal().left_ideal_deviation) << '\n';
    out << "cyclic: " << (check_cyclic(g) ? "yes" : "no") << '\n';
  }
  if (!fl.dump_gram.empty()) write_gram_csv(g.gram(), fl.dump_gram);
  return kExitOk;
}

int cmd_reduce(const Scenario& sc, const Flags& fl, double cutoff, std::uint64_t seed, std::ostream& out) {
  const State omega = sc.analysed_state();
  const GNSData g = build_gns(omega, cutoff);
  const Multiplicities mult = multiplicities(g);
  const ProjectorFamily fam = irreducible_projectors(g, seed);
  const DensityOperator rho = density_from_projectors(g, fam);

  out << "algebra: " << omega.spec().to_string() << '\n';
  out << "hilbert_dim: " << g.hilbert_dim() << '\n';
  out << "block irrep_dim multiplicity\n";
  for (const auto& c : mult.components) out << c.block << ' ' << c.irrep_dim << ' ' << c.multiplicity << '\n';
  out << "unique: " << (mult.unique ? "true" : "false") << '\n';
  out << "rho_spectrum: " << join(spectrum(rho).eigenvalues) << '\n';
  if (fl.verbose) {
    const FamilyResiduals res = check_family(g, fam);
    out << "seed: " << seed << '\n';
    out << "projectors: " << fam.projectors.size() << '\n';
    out << "family_residual: " << format_number(res.max_structural()) << '\n';
    out << "irreducible: " << (res.all_irreducible() ? "yes" : "no") << '\n';
    out << "pairing_deviation: " << format_number(verify_pairing(g, rho, omega, 100, seed)) << '\n';
    out << "note: gauge projectors are taken as P_g^(k) = J pi(g e_kk g*) J; "
           "the form g e_kk g without the adjoint is not idempotent for generic unitary g\n";
  }
  return kExitOk;
}

int cmd_entropy(const Scenario& sc, const Flags& fl, double cutoff, std::uint64_t seed, std::ostream& out) {
  const GNSData g = build_gns(sc.analysed_state(), cutoff);
  const DensityOperator rho = density_from_projectors(g, irreducible_projectors(g, seed));
  const Spectrum s = spectrum(rho);
  const double nats = entropy_of(s);
  out << "spectrum: " << join(s.eigenvalues) << '\n';
  if (fl.bits) {
    out << "entropy: " << format_number(nats / std::log(2.0)) << " bits\n";
  } else {
    out << "entropy: " << format_number(nats) << " nats\n";
  }
  return kExitOk;
}

int cmd_compare(const Scenario& sc, double tolerance, std::ostream& out, std::ostream& err) {
  if (!sc.factor_dims) throw Error(ErrorCode::Validation, "embedding: compare needs a left_factor embedding");
  const auto [na, nb] = *sc.factor_dims;
  const State reduced = restrict(sc.state, *sc.embedding);
  const Eigen::MatrixXcd rho_a = partial_trace(sc.state.weight(0), na, nb, Subsystem::A);
  double worst = 0.0;
  const BlockSpec& source = reduced.spec();
  for (int u = 0; u < source.linear_dim(); ++u) {
    const AlgebraElement e = matrix_unit(source, u);
    worst = std::max(worst, std::abs(evaluate(reduced, e) - (rho_a * e.block(0)).trace()));
  }
  out << "subsystem: M_" << na << " in M_" << na * nb << '\n';
  out << "max_deviation: " << format_number(worst) << '\n';
  if (worst > tolerance) {
    err << "restriction and partial trace differ by " << format_number(worst) << " (tolerance "
        << format_number(tolerance) << ")\n";
    return kExitInvalid;
  }
  return kExitOk;
}

int cmd_scan(const Scenario& sc, const Flags& fl, double cutoff, std::uint64_t seed, std::size_t samples,
             std::ostream& out) {
  const GNSData g = build_gns(sc.analysed_state(), cutoff);
  const ModularData m = tomita_modular(g);
  const GaugeReport r = entropy_scan(g, m, samples, seed, fl.refine);

  std::ostringstream csv = classic_stream();
  csv << "sample,entropy\n";
  for (std::size_t i = 0; i < r.entropies.size(); ++i) csv << i << ',' << format_number(r.entropies[i]) << '\n';
  if (fl.csv.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(fl.csv, std::ios::binary);
    if (!f) throw Error(ErrorCode::Validation, "--csv: cannot write " + fl.csv);
    f << csv.str();
  }
  if (fl.verbose) {
    out << "seed: " << seed << '\n';
    out << "samples: " << samples << '\n';
    out << "upper_bound: " << format_number(r.upper_bound) << '\n';
    out << "modular_residual: " << format_number(check_modular(g, m).max()) << '\n';
  }
  out << "baseline=" << format_number(r.baseline_entropy) << " min=" << format_number(r.min)
      << " max=" << format_number(r.max);
  if (r.refinement) out << " refined=" << format_number(r.refinement->entropy);
  out << '\n';
  return kExitOk;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  std::ostringstream os = classic_stream();
  os << x;
  return os.str();
}

int run(Subcommand cmd, const Scenario& scenario, const Flags& flags, std::ostream& out, std::ostream& err) {
  const double cutoff = flags.tol.value_or(scenario.options.null_cutoff);
  const std::uint64_t seed = flags.seed.value_or(scenario.options.seed);
  const std::size_t samples = flags.samples.value_or(scenario.options.samples);
  switch (cmd) {
    case Subcommand::Gns:
      return cmd_gns(scenario, flags, cutoff, out);
    case Subcommand::Reduce:
      return cmd_reduce(scenario, flags, cutoff, seed, out);
    case Subcommand::Entropy:
      return cmd_entropy(scenario, flags, cutoff, seed, out);
    case Subcommand::Compare:
      return cmd_compare(scenario, scenario.options.tolerance, out, err);
    case Subcommand::ScanGauge:
      return cmd_scan(scenario, flags, cutoff, seed, samples, out);
  }
  return kExitInvalid;
}

int run_file(Subcommand cmd, const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err) {
  try {
    return run(cmd, load_scenario(path), flags, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == ErrorCode::NumericalDegeneracy ? kExitDegenerate : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace gnsent::cli
