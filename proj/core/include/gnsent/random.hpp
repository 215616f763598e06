#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "gnsent/algebra.hpp"

namespace gnsent {

using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a run seeded with `seed`
/// (splitmix64 finalizer over the pair).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Entries (x + iy)/sqrt(2) with x, y standard normal.
Eigen::MatrixXcd random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Element with independent complex-normal entries in every block.
AlgebraElement random_element(const BlockSpec& spec, Rng& rng);

/// Uniformly distributed unit vector in C^n.
Eigen::VectorXcd random_unit_vector(Eigen::Index n, Rng& rng);

}  // namespace gnsent
