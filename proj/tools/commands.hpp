#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "scenario.hpp"

namespace gnsent::cli {

enum class Subcommand { Gns, Reduce, Entropy, Compare, ScanGauge };

/// Flags given on the command line; unset values fall back to the scenario options.
struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> samples;
  bool refine = false;
  bool bits = false;
  bool verbose = false;
  std::string dump_gram;  // gns: write the Gram matrix here
  std::string csv;        // scan-gauge: write the sample CSV here instead of stdout
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitDegenerate = 2;

/// Runs one subcommand; reports go to `out`, diagnostics to `err`.
/// Returns the process exit code.
int run(Subcommand cmd, const Scenario& scenario, const Flags& flags, std::ostream& out, std::ostream& err);

/// Loads the scenario and runs, mapping every failure to its exit code.
int run_file(Subcommand cmd, const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err);

/// 12 significant digits, classic locale, no negative zero.
std::string format_number(double x);

}  // namespace gnsent::cli
