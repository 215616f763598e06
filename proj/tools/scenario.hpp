#pragma once

// Scenario files: one JSON document describing an algebra, a state on it and
// an optional embedding of a subalgebra.
//
//   {
//     "algebra":   {"blocks": [4]},
//     "state":     {"psi_lambda": 0.3}            // or "weights" / "vector"
//     "embedding": "left_factor",                 // optional
//     "options":   {"seed": 0, "null_cutoff": 1e-10, "tolerance": 1e-10, "samples": 1000}
//   }
//
// Complex numbers are [re, im] pairs; a bare number is read as real.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <gnsent/gnsent.hpp>

namespace gnsent::cli {

struct ScenarioOptions {
  std::uint64_t seed = 0;
  double null_cutoff = kDefaultNullCutoff;
  double tolerance = 1e-10;
  std::size_t samples = 1000;
};

struct Scenario {
  BlockSpec algebra;
  State state;
  std::optional<Embedding> embedding;
  /// (n_A, n_B) when the embedding is a left-factor inclusion.
  std::optional<std::pair<int, int>> factor_dims;
  ScenarioOptions options;

  /// The state the analysis runs on: omega restricted along the embedding if
  /// there is one, omega itself otherwise.
  State analysed_state() const;
};

/// Throws Error(Parse) with line and column for malformed JSON and
/// Error(Validation) naming the offending field otherwise.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace gnsent::cli
