#include "symcone/spectral.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "symcone/errors.h"
#include "symcone/jacobi_eigen.h"

namespace symcone {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double RankThreshold(const Eigen::VectorXd& sigma, double tol) {
  const double max_abs = sigma.size() > 0 ? sigma.cwiseAbs().maxCoeff() : 0.0;
  return tol * std::max(1.0, max_abs);
}

void DecomposeBlock(const AlgebraElement& a, int b,
                    SpectralDecomposition* out) {
  const AlgebraDescriptor& d = a.descriptor();
  const Block& blk = d.block(b);
  const int slot = d.rank_offset(b);
  const auto x = a.block_coords(b);
  switch (blk.kind) {
    case BlockKind::kOrthant:
    {
      // Ascending, like the other block kinds; ties keep coordinate order.
      std::vector<int> order(blk.n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&x](int i, int j) { return x[i] < x[j]; });
      for (int k = 0; k < blk.n; ++k) {
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(blk.n);
        unit[order[k]] = 1.0;
        out->eigenvalues[slot + k] = x[order[k]];
        out->frame.push_back(EmbedBlock(d, b, unit));
      }
      break;
    }
    case BlockKind::kSpin: {
      const int m = blk.n - 1;
      const double bar_norm = x.tail(m).norm();
      Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
      if (bar_norm > 0.0) {
        u = x.tail(m) / bar_norm;
      } else {
        u[0] = 1.0;
      }
      // Stored coordinates carry a sqrt(2) factor, so the eigenvalues
      // x0 +- |xbar| of the natural element become (u0 +- |ubar|) / sqrt(2).
      Eigen::VectorXd c_minus(blk.n);
      Eigen::VectorXd c_plus(blk.n);
      c_minus << 1.0, -u;
      c_plus << 1.0, u;
      out->eigenvalues[slot] = (x[0] - bar_norm) / kSqrt2;
      out->eigenvalues[slot + 1] = (x[0] + bar_norm) / kSqrt2;
      out->frame.push_back(EmbedBlock(d, b, c_minus / kSqrt2));
      out->frame.push_back(EmbedBlock(d, b, c_plus / kSqrt2));
      break;
    }
    case BlockKind::kSymMat: {
      const SymmetricEigen eig = JacobiEigen(SvecToSymMat(x, blk.n));
      for (int i = 0; i < blk.n; ++i) {
        const Eigen::VectorXd q = eig.eigenvectors.col(i);
        out->eigenvalues[slot + i] = eig.eigenvalues[i];
        out->frame.push_back(
            EmbedBlock(d, b, SymMatToSvec(q * q.transpose())));
      }
      break;
    }
  }
}

}  // namespace

std::vector<bool> SpectralDecomposition::NonzeroMask() const {
  const double thr = RankThreshold(eigenvalues, rank_tolerance);
  std::vector<bool> mask(eigenvalues.size());
  for (int i = 0; i < eigenvalues.size(); ++i) {
    mask[i] = std::abs(eigenvalues[i]) > thr;
  }
  return mask;
}

int SpectralDecomposition::Rank() const {
  const auto mask = NonzeroMask();
  return static_cast<int>(std::count(mask.begin(), mask.end(), true));
}

AlgebraElement SpectralDecomposition::Apply(
    const std::function<double(double)>& fn) const {
  AlgebraElement out = AlgebraElement::Zero(frame.front().descriptor());
  for (size_t i = 0; i < frame.size(); ++i) {
    const double s = fn(eigenvalues[i]);
    if (s != 0.0) out += s * frame[i];
  }
  return out;
}

AlgebraElement SpectralDecomposition::Reconstruct() const {
  return Apply([](double s) { return s; });
}

AlgebraElement SpectralDecomposition::Idempotent(
    const std::vector<bool>& mask) const {
  AlgebraElement out = AlgebraElement::Zero(frame.front().descriptor());
  for (size_t i = 0; i < frame.size(); ++i) {
    if (mask[i]) out += frame[i];
  }
  return out;
}

int SpectralDecomposition::BlockOf(int slot) const {
  const AlgebraDescriptor& d = frame.front().descriptor();
  for (int b = d.num_blocks() - 1; b >= 0; --b) {
    if (slot >= d.rank_offset(b)) return b;
  }
  return 0;
}

SpectralDecomposition SpectralDecompose(const AlgebraElement& a,
                                        double rank_tolerance) {
  const AlgebraDescriptor& d = a.descriptor();
  SpectralDecomposition out;
  out.rank_tolerance = rank_tolerance;
  out.eigenvalues.resize(d.rank());
  out.frame.reserve(d.rank());
  for (int b = 0; b < d.num_blocks(); ++b) DecomposeBlock(a, b, &out);
  return out;
}

Eigen::VectorXd Eigenvalues(const AlgebraElement& a) {
  return SpectralDecompose(a).eigenvalues;
}

double Trace(const AlgebraElement& a) {
  return SpectralDecompose(a).eigenvalues.sum();
}

int Rank(const AlgebraElement& a, double rank_tolerance) {
  return SpectralDecompose(a, rank_tolerance).Rank();
}

double MinEigenvalue(const AlgebraElement& a) {
  return SpectralDecompose(a).eigenvalues.minCoeff();
}

AlgebraElement SqrtElement(const AlgebraElement& a, double rank_tolerance) {
  const SpectralDecomposition sd = SpectralDecompose(a, rank_tolerance);
  const double thr = RankThreshold(sd.eigenvalues, rank_tolerance);
  const double min_sigma = sd.eigenvalues.minCoeff();
  if (min_sigma < -thr) {
    throw DomainError("element not in cone: smallest eigenvalue " +
                      std::to_string(min_sigma));
  }
  return sd.Apply([](double s) { return std::sqrt(std::max(s, 0.0)); });
}

AlgebraElement SqrtAbsElement(const AlgebraElement& a) {
  return SpectralDecompose(a).Apply(
      [](double s) { return std::sqrt(std::abs(s)); });
}

PeirceBasis ComputePeirceBasis(const AlgebraElement& c) {
  const double defect = (JordanProduct(c, c) - c).norm();
  if (defect > 1e-8) {
    throw PreconditionError("Peirce basis needs an idempotent; ||c o c - c|| = " +
                            std::to_string(defect));
  }
  const SymmetricEigen eig = JacobiEigen(LOperatorMatrix(c));
  const int dim = c.dim();
  std::vector<int> one, half, zero;
  for (int i = 0; i < dim; ++i) {
    const double ev = eig.eigenvalues[i];
    // Cluster radius 1/4 separates {0, 1/2, 1}; then insist on 1e-6.
    double target;
    if (std::abs(ev - 1.0) < 0.25) {
      one.push_back(i);
      target = 1.0;
    } else if (std::abs(ev - 0.5) < 0.25) {
      half.push_back(i);
      target = 0.5;
    } else if (std::abs(ev) < 0.25) {
      zero.push_back(i);
      target = 0.0;
    } else {
      target = ev + 1.0;
    }
    if (std::abs(ev - target) > 1e-6) {
      throw NumericalError("L_c eigenvalue " + std::to_string(ev) +
                           " is not in {0, 1/2, 1}");
    }
  }
  auto gather = [&](const std::vector<int>& idx) {
    Eigen::MatrixXd m(dim, static_cast<int>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) {
      m.col(k) = eig.eigenvectors.col(idx[k]);
    }
    return m;
  };
  return PeirceBasis{c, gather(one), gather(half), gather(zero)};
}

AlgebraElement SupportIdempotent(const AlgebraElement& z,
                                 double rank_tolerance) {
  const SpectralDecomposition sd = SpectralDecompose(z, rank_tolerance);
  const double thr = RankThreshold(sd.eigenvalues, rank_tolerance);
  std::vector<bool> mask(sd.eigenvalues.size());
  for (int i = 0; i < sd.eigenvalues.size(); ++i) {
    mask[i] = sd.eigenvalues[i] > thr;
  }
  return sd.Idempotent(mask);
}

}  // namespace symcone
