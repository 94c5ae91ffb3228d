#include "symcone/algebra.h"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symcone/errors.h"

namespace symcone {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

Block ParseBlock(std::string_view token) {
  token = Trim(token);
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) {
    throw StructuralError("block '" + std::string(token) +
                          "' is not of the form kind:n");
  }
  const std::string_view kind = Trim(token.substr(0, colon));
  const std::string_view size = Trim(token.substr(colon + 1));
  int n = 0;
  const auto [ptr, ec] = std::from_chars(size.data(), size.data() + size.size(), n);
  if (ec != std::errc() || ptr != size.data() + size.size()) {
    throw StructuralError("bad block size '" + std::string(size) + "'");
  }
  if (kind == "orthant") return {BlockKind::kOrthant, n};
  if (kind == "spin") return {BlockKind::kSpin, n};
  if (kind == "symmat") return {BlockKind::kSymMat, n};
  throw StructuralError("unknown block kind '" + std::string(kind) + "'");
}

}  // namespace

int Block::dim() const {
  switch (kind) {
    case BlockKind::kOrthant:
    case BlockKind::kSpin:
      return n;
    case BlockKind::kSymMat:
      return n * (n + 1) / 2;
  }
  return 0;
}

int Block::rank() const {
  switch (kind) {
    case BlockKind::kOrthant:
    case BlockKind::kSymMat:
      return n;
    case BlockKind::kSpin:
      return 2;
  }
  return 0;
}

std::string Block::ToString() const {
  switch (kind) {
    case BlockKind::kOrthant:
      return "orthant:" + std::to_string(n);
    case BlockKind::kSpin:
      return "spin:" + std::to_string(n);
    case BlockKind::kSymMat:
      return "symmat:" + std::to_string(n);
  }
  return {};
}

AlgebraDescriptor::AlgebraDescriptor(std::vector<Block> blocks) {
  if (blocks.empty()) {
    throw StructuralError("algebra descriptor needs at least one block");
  }
  auto impl = std::make_shared<Impl>();
  for (const Block& b : blocks) {
    const int min_n = b.kind == BlockKind::kSpin ? 2 : 1;
    if (b.n < min_n) {
      throw StructuralError("block " + b.ToString() + " is too small");
    }
    impl->offsets.push_back(impl->dim);
    impl->rank_offsets.push_back(impl->rank);
    impl->dim += b.dim();
    impl->rank += b.rank();
  }
  impl->blocks = std::move(blocks);
  impl_ = std::move(impl);
}

AlgebraDescriptor AlgebraDescriptor::Parse(std::string_view text) {
  std::vector<Block> blocks;
  while (true) {
    const auto plus = text.find('+');
    blocks.push_back(ParseBlock(text.substr(0, plus)));
    if (plus == std::string_view::npos) break;
    text.remove_prefix(plus + 1);
  }
  return AlgebraDescriptor(std::move(blocks));
}

std::string AlgebraDescriptor::ToString() const {
  std::string out;
  for (const Block& b : blocks()) {
    if (!out.empty()) out += '+';
    out += b.ToString();
  }
  return out;
}

bool AlgebraDescriptor::operator==(const AlgebraDescriptor& other) const {
  return impl_ == other.impl_ || impl_->blocks == other.impl_->blocks;
}

AlgebraElement::AlgebraElement(AlgebraDescriptor descriptor,
                               Eigen::VectorXd coords)
    : descriptor_(std::move(descriptor)), coords_(std::move(coords)) {
  if (coords_.size() != descriptor_.dim()) {
    throw StructuralError("element has " + std::to_string(coords_.size()) +
                          " coordinates, algebra " + descriptor_.ToString() +
                          " needs " + std::to_string(descriptor_.dim()));
  }
}

AlgebraElement AlgebraElement::Zero(const AlgebraDescriptor& d) {
  return AlgebraElement(d, Eigen::VectorXd::Zero(d.dim()));
}

AlgebraElement AlgebraElement::FromNatural(const AlgebraDescriptor& d,
                                           std::span<const double> natural) {
  if (static_cast<int>(natural.size()) != d.dim()) {
    throw StructuralError("expected " + std::to_string(d.dim()) +
                          " natural coordinates for " + d.ToString() +
                          ", got " + std::to_string(natural.size()));
  }
  Eigen::VectorXd coords(d.dim());
  for (int b = 0; b < d.num_blocks(); ++b) {
    const Block& blk = d.block(b);
    const int off = d.offset(b);
    switch (blk.kind) {
      case BlockKind::kOrthant:
        for (int i = 0; i < blk.n; ++i) coords[off + i] = natural[off + i];
        break;
      case BlockKind::kSpin:
        for (int i = 0; i < blk.n; ++i) {
          coords[off + i] = kSqrt2 * natural[off + i];
        }
        break;
      case BlockKind::kSymMat: {
        int k = off;
        for (int j = 0; j < blk.n; ++j) {
          for (int i = j; i < blk.n; ++i, ++k) {
            coords[k] = (i == j ? 1.0 : kSqrt2) * natural[k];
          }
        }
        break;
      }
    }
  }
  return AlgebraElement(d, std::move(coords));
}

Eigen::VectorXd AlgebraElement::ToNatural() const {
  Eigen::VectorXd natural(coords_.size());
  const AlgebraDescriptor& d = descriptor_;
  for (int b = 0; b < d.num_blocks(); ++b) {
    const Block& blk = d.block(b);
    const int off = d.offset(b);
    switch (blk.kind) {
      case BlockKind::kOrthant:
        natural.segment(off, blk.n) = coords_.segment(off, blk.n);
        break;
      case BlockKind::kSpin:
        natural.segment(off, blk.n) = coords_.segment(off, blk.n) / kSqrt2;
        break;
      case BlockKind::kSymMat: {
        int k = off;
        for (int j = 0; j < blk.n; ++j) {
          for (int i = j; i < blk.n; ++i, ++k) {
            natural[k] = coords_[k] / (i == j ? 1.0 : kSqrt2);
          }
        }
        break;
      }
    }
  }
  return natural;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  RequireSameAlgebra(*this, other);
  coords_ += other.coords_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  RequireSameAlgebra(*this, other);
  coords_ -= other.coords_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
  coords_ *= s;
  return *this;
}

void RequireSameAlgebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.descriptor() == b.descriptor())) {
    throw StructuralError("algebra mismatch: " + a.descriptor().ToString() +
                          " vs " + b.descriptor().ToString());
  }
}

Eigen::VectorXd SymMatToSvec(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v(n * (n + 1) / 2);
  int k = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = j; i < n; ++i, ++k) {
      v[k] = i == j ? m(i, i) : kSqrt2 * 0.5 * (m(i, j) + m(j, i));
    }
  }
  return v;
}

Eigen::MatrixXd SvecToSymMat(const Eigen::Ref<const Eigen::VectorXd>& v,
                             int n) {
  Eigen::MatrixXd m(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = j; i < n; ++i, ++k) {
      if (i == j) {
        m(i, i) = v[k];
      } else {
        m(i, j) = m(j, i) = v[k] / kSqrt2;
      }
    }
  }
  return m;
}

Eigen::MatrixXd BlockMatrix(const AlgebraElement& a, int block) {
  const Block& blk = a.descriptor().block(block);
  if (blk.kind != BlockKind::kSymMat) {
    throw StructuralError("block " + blk.ToString() + " is not symmat");
  }
  return SvecToSymMat(a.block_coords(block), blk.n);
}

AlgebraElement EmbedBlock(const AlgebraDescriptor& d, int block,
                          const Eigen::Ref<const Eigen::VectorXd>& coords) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(d.dim());
  full.segment(d.offset(block), d.block(block).dim()) = coords;
  return AlgebraElement(d, std::move(full));
}

AlgebraElement JordanProduct(const AlgebraElement& a,
                             const AlgebraElement& b) {
  RequireSameAlgebra(a, b);
  const AlgebraDescriptor& d = a.descriptor();
  Eigen::VectorXd out(d.dim());
  for (int k = 0; k < d.num_blocks(); ++k) {
    const Block& blk = d.block(k);
    const int off = d.offset(k);
    const auto x = a.coords().segment(off, blk.dim());
    const auto y = b.coords().segment(off, blk.dim());
    auto z = out.segment(off, blk.dim());
    switch (blk.kind) {
      case BlockKind::kOrthant:
        z = x.cwiseProduct(y);
        break;
      case BlockKind::kSpin: {
        const int m = blk.n - 1;
        z[0] = x.dot(y) / kSqrt2;
        z.tail(m) = (x[0] * y.tail(m) + y[0] * x.tail(m)) / kSqrt2;
        break;
      }
      case BlockKind::kSymMat: {
        const Eigen::MatrixXd xm = SvecToSymMat(x, blk.n);
        const Eigen::MatrixXd ym = SvecToSymMat(y, blk.n);
        const Eigen::MatrixXd xy = xm * ym;
        z = SymMatToSvec(0.5 * (xy + xy.transpose()));
        break;
      }
    }
  }
  return AlgebraElement(d, std::move(out));
}

double Inner(const AlgebraElement& a, const AlgebraElement& b) {
  RequireSameAlgebra(a, b);
  return a.coords().dot(b.coords());
}

AlgebraElement Identity(const AlgebraDescriptor& d) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(d.dim());
  for (int k = 0; k < d.num_blocks(); ++k) {
    const Block& blk = d.block(k);
    const int off = d.offset(k);
    switch (blk.kind) {
      case BlockKind::kOrthant:
        e.segment(off, blk.n).setOnes();
        break;
      case BlockKind::kSpin:
        e[off] = kSqrt2;
        break;
      case BlockKind::kSymMat:
        e.segment(off, blk.dim()) =
            SymMatToSvec(Eigen::MatrixXd::Identity(blk.n, blk.n));
        break;
    }
  }
  return AlgebraElement(d, std::move(e));
}

Eigen::MatrixXd LOperatorMatrix(const AlgebraElement& a) {
  const AlgebraDescriptor& d = a.descriptor();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(d.dim(), d.dim());
  for (int k = 0; k < d.num_blocks(); ++k) {
    const Block& blk = d.block(k);
    const int off = d.offset(k);
    const int bd = blk.dim();
    const auto x = a.coords().segment(off, bd);
    auto lb = l.block(off, off, bd, bd);
    switch (blk.kind) {
      case BlockKind::kOrthant:
        lb.diagonal() = x;
        break;
      case BlockKind::kSpin: {
        const int m = blk.n - 1;
        lb(0, 0) = x[0];
        lb.block(0, 1, 1, m) = x.tail(m).transpose();
        lb.block(1, 0, m, 1) = x.tail(m);
        lb.block(1, 1, m, m).diagonal().setConstant(x[0]);
        lb /= kSqrt2;
        break;
      }
      case BlockKind::kSymMat: {
        const Eigen::MatrixXd xm = SvecToSymMat(x, blk.n);
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(bd);
        for (int col = 0; col < bd; ++col) {
          unit.setZero();
          unit[col] = 1.0;
          const Eigen::MatrixXd prod = xm * SvecToSymMat(unit, blk.n);
          lb.col(col) = SymMatToSvec(0.5 * (prod + prod.transpose()));
        }
        // Exact symmetry; the columns above agree with it up to rounding.
        lb = 0.5 * (lb + lb.transpose()).eval();
        break;
      }
    }
  }
  return l;
}

}  // namespace symcone
