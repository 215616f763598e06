#pragma once

// Finite-dimensional C*-algebras realized concretely as direct sums of full
// matrix algebras M_{n_1}(C) + ... + M_{n_K}(C).
//
// Matrix units e_ij^(k) are enumerated in (block, row, col) row-major order;
// that enumeration is the coordinate system used by every linear map in the
// library (Gram matrices, embeddings, left multiplication).

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gnsent {

using Complex = std::complex<double>;

class BlockSpec {
 public:
  BlockSpec() = default;
  /// Throws Error(InvalidSpec) on an empty list or a non-positive size.
  explicit BlockSpec(std::vector<int> blocks);

  const std::vector<int>& blocks() const noexcept { return blocks_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  int block_size(std::size_t k) const { return blocks_.at(k); }

  /// d_A = sum of n_k^2.
  int linear_dim() const noexcept { return linear_dim_; }
  /// Position of e_ij^(k) in the unit enumeration.
  int unit_index(std::size_t k, int i, int j) const;
  /// First unit index belonging to block k.
  int block_offset(std::size_t k) const { return offsets_.at(k); }

  struct UnitLabel {
    std::size_t block;
    int row;
    int col;
  };
  UnitLabel unit_label(int index) const;

  bool is_simple() const noexcept { return blocks_.size() == 1; }

  std::string to_string() const;

  friend bool operator==(const BlockSpec& a, const BlockSpec& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int linear_dim_ = 0;
};

BlockSpec make_algebra(std::vector<int> blocks);

class AlgebraElement {
 public:
  AlgebraElement() = default;
  /// Takes ownership of one square matrix per block; shapes must match `spec`.
  AlgebraElement(BlockSpec spec, std::vector<Eigen::MatrixXcd> blocks);

  static AlgebraElement zero(const BlockSpec& spec);
  static AlgebraElement identity(const BlockSpec& spec);
  /// Inverse of coefficients(): the element sum_u c_u e_u.
  static AlgebraElement from_coefficients(const BlockSpec& spec, const Eigen::VectorXcd& coeffs);

  const BlockSpec& spec() const noexcept { return spec_; }
  const std::vector<Eigen::MatrixXcd>& blocks() const noexcept { return blocks_; }
  const Eigen::MatrixXcd& block(std::size_t k) const { return blocks_.at(k); }

  /// Coordinates over the matrix-unit basis (length d_A).
  Eigen::VectorXcd coefficients() const;

  AlgebraElement adjoint() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex scalar);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  /// Blockwise matrix product.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  BlockSpec spec_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

AlgebraElement matrix_unit(const BlockSpec& spec, std::size_t k, int i, int j);
/// Matrix unit by its position in the (block, row, col) enumeration.
AlgebraElement matrix_unit(const BlockSpec& spec, int index);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);

/// Largest singular value over all blocks.
double operator_norm(const AlgebraElement& a);

/// Largest entrywise modulus of a - b. Specs must match.
double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b);

/// Matrix of left multiplication x -> a x in matrix-unit coordinates.
Eigen::MatrixXcd left_multiplication_matrix(const AlgebraElement& a);
/// Matrix of right multiplication x -> x a in matrix-unit coordinates.
Eigen::MatrixXcd right_multiplication_matrix(const AlgebraElement& a);

/// Kronecker product of single-block algebras. Row-major, left factor outer:
/// (a (x) b)(i*m + k, j*m + l) = a(i,j) b(k,l).
class TensorProduct {
 public:
  TensorProduct(BlockSpec left, BlockSpec right);

  const BlockSpec& spec() const noexcept { return spec_; }
  const BlockSpec& left() const noexcept { return left_; }
  const BlockSpec& right() const noexcept { return right_; }

  AlgebraElement operator()(const AlgebraElement& a, const AlgebraElement& b) const;

 private:
  BlockSpec left_;
  BlockSpec right_;
  BlockSpec spec_;
};

/// Throws Error(Unsupported) unless both specs are single-block.
TensorProduct tensor(const BlockSpec& left, const BlockSpec& right);

/// A linear map source -> target stored by the images of the source matrix
/// units, in the source's unit enumeration.
class Embedding {
 public:
  Embedding(BlockSpec source, BlockSpec target, std::vector<AlgebraElement> images);

  const BlockSpec& source() const noexcept { return source_; }
  const BlockSpec& target() const noexcept { return target_; }
  const std::vector<AlgebraElement>& images() const noexcept { return images_; }

  AlgebraElement operator()(const AlgebraElement& x) const;

 private:
  BlockSpec source_;
  BlockSpec target_;
  std::vector<AlgebraElement> images_;
};

/// alpha -> alpha (x) 1_m, embedding M_n into M_{nm}.
Embedding embed_left_factor(const BlockSpec& left, const BlockSpec& right);
/// beta -> 1_n (x) beta, embedding M_m into M_{nm}.
Embedding embed_right_factor(const BlockSpec& left, const BlockSpec& right);
Embedding identity_embedding(const BlockSpec& spec);

struct EmbeddingViolation {
  enum class Kind { Shape, Unital, Multiplicative, Star, Injective };
  Kind kind;
  std::string detail;
  double deviation;
};

std::string_view to_string(EmbeddingViolation::Kind kind) noexcept;

/// Checks that the embedding is an injective unital *-homomorphism, testing
/// multiplicativity and *-compatibility on every pair of matrix units. An
/// empty result means the embedding is valid.
std::vector<EmbeddingViolation> check_embedding(const Embedding& e, double tol = 1e-10);

}  // namespace gnsent
