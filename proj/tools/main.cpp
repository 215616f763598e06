#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using gnsent::cli::Subcommand;

  CLI::App app{"GNS representations, reduced density operators and entropy for finite-dimensional C*-algebras",
               "gnsent"};
  app.require_subcommand(1);

  std::string path;
  gnsent::cli::Flags flags;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::size_t samples = 0;
  Subcommand chosen = Subcommand::Gns;

  const auto add = [&](const char* name, const char* help, Subcommand cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", path, "Scenario JSON file")->required();
    sub->add_option("--seed", seed, "Seed for decompositions and sampling");
    sub->add_option("--tol", tol, "Relative null-space cutoff for the Gram matrix")->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", flags.verbose, "Print diagnostics");
    sub->callback([&, cmd] { chosen = cmd; });
    return sub;
  };

  CLI::App* gns = add("gns", "GNS dimensions and Gram spectrum", Subcommand::Gns);
  gns->add_option("--dump-gram", flags.dump_gram, "Write the Gram matrix as CSV of re,im pairs");
  add("reduce", "Irreducible decomposition and density-operator spectrum", Subcommand::Reduce);
  CLI::App* entropy = add("entropy", "Von Neumann entropy of the extracted density operator", Subcommand::Entropy);
  entropy->add_flag("--bits", flags.bits, "Report in bits instead of nats");
  add("compare", "Restriction against partial trace", Subcommand::Compare);
  CLI::App* scan = add("scan-gauge", "Entropy over Haar-random commutant gauges", Subcommand::ScanGauge);
  scan->add_option("--samples", samples, "Number of Haar draws");
  scan->add_flag("--refine", flags.refine, "Coordinate ascent from the best draw");
  scan->add_option("--csv", flags.csv, "Write the sample CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gnsent::cli::kExitInvalid;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    if (sub->count("--seed")) flags.seed = seed;
    if (sub->count("--tol")) flags.tol = tol;
    if (chosen == Subcommand::ScanGauge && sub->count("--samples")) flags.samples = samples;
  }
  return gnsent::cli::run_file(chosen, path, flags, std::cout, std::cerr);
}
