#include "gnsent/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "gnsent/error.hpp"
#include "linalg.hpp"

namespace gnsent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpec: return "invalid-spec";
    case ErrorCode::Index: return "index";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::InvalidVector: return "invalid-vector";
    case ErrorCode::InvalidEmbedding: return "invalid-embedding";
    case ErrorCode::InvalidFamily: return "invalid-family";
    case ErrorCode::InvalidDensity: return "invalid-density";
    case ErrorCode::InvalidUnitary: return "invalid-unitary";
    case ErrorCode::FaithfulnessRequired: return "faithfulness-required";
    case ErrorCode::NumericalDegeneracy: return "numerical-degeneracy";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Validation: return "validation";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// BlockSpec

BlockSpec::BlockSpec(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorCode::InvalidSpec, "block list is empty");
  offsets_.reserve(blocks_.size());
  for (int n : blocks_) {
    if (n < 1) {
      throw Error(ErrorCode::InvalidSpec, "block size must be >= 1, got " + std::to_string(n));
    }
    offsets_.push_back(linear_dim_);
    linear_dim_ += n * n;
  }
}

int BlockSpec::unit_index(std::size_t k, int i, int j) const {
  if (k >= blocks_.size()) {
    throw Error(ErrorCode::Index, "block index " + std::to_string(k) + " out of range");
  }
  const int n = blocks_[k];
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw Error(ErrorCode::Index, "unit (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") out of range for block of size " + std::to_string(n));
  }
  return offsets_[k] + i * n + j;
}

BlockSpec::UnitLabel BlockSpec::unit_label(int index) const {
  if (index < 0 || index >= linear_dim_) {
    throw Error(ErrorCode::Index, "unit index " + std::to_string(index) + " out of range");
  }
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const auto k = static_cast<std::size_t>(std::distance(offsets_.begin(), it) - 1);
  const int local = index - offsets_[k];
  return {k, local / blocks_[k], local % blocks_[k]};
}

std::string BlockSpec::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < blocks_.size(); ++k) os << (k ? "," : "") << blocks_[k];
  os << ']';
  return os.str();
}

BlockSpec make_algebra(std::vector<int> blocks) { return BlockSpec(std::move(blocks)); }

// ---------------------------------------------------------------------------
// AlgebraElement

namespace {

void require_same_spec(const BlockSpec& a, const BlockSpec& b, const char* op) {
  if (!(a == b)) {
    throw Error(ErrorCode::Shape, std::string(op) + ": spec mismatch " + a.to_string() + " vs " +
                                      b.to_string());
  }
}

}  // namespace

AlgebraElement::AlgebraElement(BlockSpec spec, std::vector<Eigen::MatrixXcd> blocks)
    : spec_(std::move(spec)), blocks_(std::move(blocks)) {
  if (blocks_.size() != spec_.num_blocks()) {
    throw Error(ErrorCode::Shape, "element has " + std::to_string(blocks_.size()) +
                                      " blocks, spec " + spec_.to_string() + " expects " +
                                      std::to_string(spec_.num_blocks()));
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = spec_.block_size(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      throw Error(ErrorCode::Shape, "block " + std::to_string(k) + " has shape " +
                                        std::to_string(blocks_[k].rows()) + "x" +
                                        std::to_string(blocks_[k].cols()) + ", expected " +
                                        std::to_string(n) + "x" + std::to_string(n));
    }
  }
}

AlgebraElement AlgebraElement::zero(const BlockSpec& spec) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int n : spec.blocks()) blocks.push_back(Eigen::MatrixXcd::Zero(n, n));
  return {spec, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const BlockSpec& spec) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int n : spec.blocks()) blocks.push_back(Eigen::MatrixXcd::Identity(n, n));
  return {spec, std::move(blocks)};
}

AlgebraElement AlgebraElement::from_coefficients(const BlockSpec& spec,
                                                 const Eigen::VectorXcd& coeffs) {
  if (coeffs.size() != spec.linear_dim()) {
    throw Error(ErrorCode::Shape, "coefficient vector has length " + std::to_string(coeffs.size()) +
                                      ", expected " + std::to_string(spec.linear_dim()));
  }
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_size(k);
    Eigen::MatrixXcd b(n, n);
    const int off = spec.block_offset(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = coeffs(off + i * n + j);
    blocks.push_back(std::move(b));
  }
  return {spec, std::move(blocks)};
}

Eigen::VectorXcd AlgebraElement::coefficients() const {
  Eigen::VectorXcd c(spec_.linear_dim());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = spec_.block_size(k);
    const int off = spec_.block_offset(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(off + i * n + j) = blocks_[k](i, j);
  }
  return c;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return {spec_, std::move(blocks)};
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_spec(spec_, other.spec_, "add");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_spec(spec_, other.spec_, "subtract");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= other.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
  for (auto& b : blocks_) b *= scalar;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a.spec_, b.spec_, "multiply");
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(a.blocks_.size());
  for (std::size_t k = 0; k < a.blocks_.size(); ++k) blocks.push_back(a.blocks_[k] * b.blocks_[k]);
  return {a.spec_, std::move(blocks)};
}

AlgebraElement matrix_unit(const BlockSpec& spec, std::size_t k, int i, int j) {
  spec.unit_index(k, i, j);  // range check
  AlgebraElement unit = AlgebraElement::zero(spec);
  std::vector<Eigen::MatrixXcd> blocks = unit.blocks();
  blocks[k](i, j) = 1.0;
  return {spec, std::move(blocks)};
}

AlgebraElement matrix_unit(const BlockSpec& spec, int index) {
  const auto label = spec.unit_label(index);
  return matrix_unit(spec, label.block, label.row, label.col);
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

AlgebraElement adjoint(const AlgebraElement& a) { return a.adjoint(); }

double operator_norm(const AlgebraElement& a) {
  double norm = 0.0;
  for (const auto& b : a.blocks()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    if (svd.singularValues().size() > 0) norm = std::max(norm, svd.singularValues()(0));
  }
  return norm;
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_spec(a.spec(), b.spec(), "compare");
  double m = 0.0;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    m = std::max(m, detail::max_abs(a.block(k) - b.block(k)));
  }
  return m;
}

Eigen::MatrixXcd left_multiplication_matrix(const AlgebraElement& a) {
  const BlockSpec& spec = a.spec();
  const int d = spec.linear_dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  // a e_{i'j} = sum_i a(i,i') e_{ij}: per block this is kron(a_k, I).
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_size(k);
    const int off = spec.block_offset(k);
    const auto& blk = a.block(k);
    for (int i = 0; i < n; ++i)
      for (int ip = 0; ip < n; ++ip)
        for (int j = 0; j < n; ++j) m(off + i * n + j, off + ip * n + j) = blk(i, ip);
  }
  return m;
}

Eigen::MatrixXcd right_multiplication_matrix(const AlgebraElement& a) {
  const BlockSpec& spec = a.spec();
  const int d = spec.linear_dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  // e_{ij'} a = sum_j a(j',j) e_{ij}: per block this is kron(I, a_k^T).
  for (std::size_t k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_size(k);
    const int off = spec.block_offset(k);
    const auto& blk = a.block(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp) m(off + i * n + j, off + i * n + jp) = blk(jp, j);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Tensor products and embeddings

TensorProduct::TensorProduct(BlockSpec left, BlockSpec right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!left_.is_simple() || !right_.is_simple()) {
    throw Error(ErrorCode::Unsupported, "tensor products are supported for single-block algebras only");
  }
  spec_ = BlockSpec({left_.block_size(0) * right_.block_size(0)});
}

AlgebraElement TensorProduct::operator()(const AlgebraElement& a, const AlgebraElement& b) const {
  require_same_spec(a.spec(), left_, "tensor (left)");
  require_same_spec(b.spec(), right_, "tensor (right)");
  const auto& x = a.block(0);
  const auto& y = b.block(0);
  const Eigen::Index n = x.rows();
  const Eigen::Index m = y.rows();
  Eigen::MatrixXcd out(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out.block(i * m, j * m, m, m) = x(i, j) * y;
  return {spec_, {std::move(out)}};
}

TensorProduct tensor(const BlockSpec& left, const BlockSpec& right) { return {left, right}; }

Embedding::Embedding(BlockSpec source, BlockSpec target, std::vector<AlgebraElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.linear_dim()) {
    throw Error(ErrorCode::Shape, "embedding needs " + std::to_string(source_.linear_dim()) +
                                      " unit images, got " + std::to_string(images_.size()));
  }
  for (const auto& img : images_) require_same_spec(img.spec(), target_, "embedding image");
}

AlgebraElement Embedding::operator()(const AlgebraElement& x) const {
  require_same_spec(x.spec(), source_, "embed");
  const Eigen::VectorXcd c = x.coefficients();
  AlgebraElement out = AlgebraElement::zero(target_);
  for (Eigen::Index u = 0; u < c.size(); ++u) {
    if (c(u) != Complex(0.0)) out += images_[static_cast<std::size_t>(u)] * c(u);
  }
  return out;
}

Embedding embed_left_factor(const BlockSpec& left, const BlockSpec& right) {
  const TensorProduct tp(left, right);
  const AlgebraElement one = AlgebraElement::identity(right);
  std::vector<AlgebraElement> images;
  for (int u = 0; u < left.linear_dim(); ++u) images.push_back(tp(matrix_unit(left, u), one));
  return {left, tp.spec(), std::move(images)};
}

Embedding embed_right_factor(const BlockSpec& left, const BlockSpec& right) {
  const TensorProduct tp(left, right);
  const AlgebraElement one = AlgebraElement::identity(left);
  std::vector<AlgebraElement> images;
  for (int u = 0; u < right.linear_dim(); ++u) images.push_back(tp(one, matrix_unit(right, u)));
  return {right, tp.spec(), std::move(images)};
}

Embedding identity_embedding(const BlockSpec& spec) {
  std::vector<AlgebraElement> images;
  for (int u = 0; u < spec.linear_dim(); ++u) images.push_back(matrix_unit(spec, u));
  return {spec, spec, std::move(images)};
}

std::string_view to_string(EmbeddingViolation::Kind kind) noexcept {
  switch (kind) {
    case EmbeddingViolation::Kind::Shape: return "shape";
    case EmbeddingViolation::Kind::Unital: return "non-unital";
    case EmbeddingViolation::Kind::Multiplicative: return "non-multiplicative";
    case EmbeddingViolation::Kind::Star: return "star-violation";
    case EmbeddingViolation::Kind::Injective: return "non-injective";
  }
  return "unknown";
}

std::vector<EmbeddingViolation> check_embedding(const Embedding& e, double tol) {
  using Kind = EmbeddingViolation::Kind;
  std::vector<EmbeddingViolation> out;
  const BlockSpec& src = e.source();
  const int d = src.linear_dim();

  const double unit_dev =
      max_abs_diff(e(AlgebraElement::identity(src)), AlgebraElement::identity(e.target()));
  if (unit_dev > tol) out.push_back({Kind::Unital, "iota(1) != 1", unit_dev});

  const auto label = [&](int u) {
    const auto l = src.unit_label(u);
    return "e" + std::to_string(l.row) + std::to_string(l.col) + "^(" + std::to_string(l.block) + ")";
  };

  // e_u e_v is either zero or a single unit, so iota(e_u e_v) is read off the images directly.
  for (int u = 0; u < d; ++u) {
    const auto lu = src.unit_label(u);
    const int u_star = src.unit_index(lu.block, lu.col, lu.row);
    const double star_dev = max_abs_diff(e.images()[u].adjoint(), e.images()[u_star]);
    if (star_dev > tol) {
      out.push_back({Kind::Star, "iota(" + label(u) + "*) != iota(" + label(u) + ")*", star_dev});
    }
    for (int v = 0; v < d; ++v) {
      const auto lv = src.unit_label(v);
      const AlgebraElement lhs = e.images()[u] * e.images()[v];
      const AlgebraElement rhs = (lu.block == lv.block && lu.col == lv.row)
                                     ? e.images()[src.unit_index(lu.block, lu.row, lv.col)]
                                     : AlgebraElement::zero(e.target());
      const double dev = max_abs_diff(lhs, rhs);
      if (dev > tol) {
        out.push_back({Kind::Multiplicative,
                       "iota(" + label(u) + ")iota(" + label(v) + ") != iota(" + label(u) + label(v) + ")",
                       dev});
      }
    }
  }

  Eigen::MatrixXcd coeffs(e.target().linear_dim(), d);
  for (int u = 0; u < d; ++u) coeffs.col(u) = e.images()[u].coefficients();
  const int rank = detail::numerical_rank(coeffs, 1e-10);
  if (rank < d) {
    out.push_back({Kind::Injective,
                   "images span dimension " + std::to_string(rank) + " < " + std::to_string(d),
                   static_cast<double>(d - rank)});
  }
  return out;
}

}  // namespace gnsent
