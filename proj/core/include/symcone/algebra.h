#pragma once

// Euclidean Jordan algebras built as direct sums of three simple families:
//
//   Orthant(n)  R^n with the componentwise product, rank n.
//   Spin(n)     R x R^{n-1} (Lorentz algebra), rank 2.
//   SymMat(n)   n x n real symmetric matrices with (AB + BA) / 2, rank n.
//
// Coordinates are scaled so that the plain dot product of two coordinate
// vectors equals the trace inner product <a, b> = tr(a o b):
//
//   Orthant  stored as is.
//   Spin     stored as sqrt(2) * (x0, xbar); tr(x) = 2 x0.
//   SymMat   lower triangle, column major, off-diagonals times sqrt(2).
//
// "Natural" coordinates drop the scaling (Spin: (x0, xbar); SymMat: the
// plain lower-triangle entries in the same order). Text and JSON interfaces
// use natural coordinates.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace symcone {

enum class BlockKind { kOrthant, kSpin, kSymMat };

struct Block {
  BlockKind kind;
  int n;

  int dim() const;
  int rank() const;
  std::string ToString() const;

  bool operator==(const Block&) const = default;
};

class AlgebraDescriptor {
 public:
  // Throws StructuralError on an empty list or invalid sizes.
  explicit AlgebraDescriptor(std::vector<Block> blocks);

  // Parses "orthant:3+spin:4+symmat:3".
  static AlgebraDescriptor Parse(std::string_view text);

  static AlgebraDescriptor Orthant(int n) {
    return AlgebraDescriptor({{BlockKind::kOrthant, n}});
  }
  static AlgebraDescriptor Spin(int n) {
    return AlgebraDescriptor({{BlockKind::kSpin, n}});
  }
  static AlgebraDescriptor SymMat(int n) {
    return AlgebraDescriptor({{BlockKind::kSymMat, n}});
  }

  std::string ToString() const;

  const std::vector<Block>& blocks() const { return impl_->blocks; }
  int num_blocks() const { return static_cast<int>(impl_->blocks.size()); }
  const Block& block(int i) const { return impl_->blocks[i]; }
  int dim() const { return impl_->dim; }
  int rank() const { return impl_->rank; }
  // First coordinate of block i.
  int offset(int i) const { return impl_->offsets[i]; }
  // First eigenvalue slot of block i.
  int rank_offset(int i) const { return impl_->rank_offsets[i]; }

  bool operator==(const AlgebraDescriptor& other) const;

 private:
  struct Impl {
    std::vector<Block> blocks;
    std::vector<int> offsets;
    std::vector<int> rank_offsets;
    int dim = 0;
    int rank = 0;
  };
  std::shared_ptr<const Impl> impl_;
};

class AlgebraElement {
 public:
  // Throws StructuralError if coords.size() != descriptor.dim().
  AlgebraElement(AlgebraDescriptor descriptor, Eigen::VectorXd coords);

  static AlgebraElement Zero(const AlgebraDescriptor& d);
  static AlgebraElement FromNatural(const AlgebraDescriptor& d,
                                    std::span<const double> natural);
  static AlgebraElement FromNatural(const AlgebraDescriptor& d,
                                    std::initializer_list<double> natural) {
    return FromNatural(d, std::span<const double>(natural.begin(),
                                                  natural.size()));
  }
  Eigen::VectorXd ToNatural() const;

  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

  Eigen::VectorXd::ConstSegmentReturnType block_coords(int i) const {
    return coords_.segment(descriptor_.offset(i), descriptor_.block(i).dim());
  }

  double norm() const { return coords_.norm(); }

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(double s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    return a += b;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    return a -= b;
  }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }
  friend AlgebraElement operator*(double s, AlgebraElement a) {
    return a *= s;
  }
  friend AlgebraElement operator*(AlgebraElement a, double s) {
    return a *= s;
  }

 private:
  AlgebraDescriptor descriptor_;
  Eigen::VectorXd coords_;
};

AlgebraElement JordanProduct(const AlgebraElement& a, const AlgebraElement& b);

// tr(a o b); equal to the coordinate dot product.
double Inner(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement Identity(const AlgebraDescriptor& d);

// Dense symmetric matrix of w -> a o w acting on stored coordinates.
Eigen::MatrixXd LOperatorMatrix(const AlgebraElement& a);

// Scaled symmetric vectorization helpers for one SymMat block.
Eigen::VectorXd SymMatToSvec(const Eigen::MatrixXd& m);
Eigen::MatrixXd SvecToSymMat(const Eigen::Ref<const Eigen::VectorXd>& v,
                             int n);

// Matrix view of SymMat block i of a.
Eigen::MatrixXd BlockMatrix(const AlgebraElement& a, int block);

// Element that is zero except on block i, where it equals `coords` (stored
// coordinates).
AlgebraElement EmbedBlock(const AlgebraDescriptor& d, int block,
                          const Eigen::Ref<const Eigen::VectorXd>& coords);

// Throws StructuralError unless a and b share a descriptor.
void RequireSameAlgebra(const AlgebraElement& a, const AlgebraElement& b);

}  // namespace symcone
