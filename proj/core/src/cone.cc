#include "symcone/cone.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "symcone/errors.h"
#include "symcone/jacobi_eigen.h"
#include "symcone/linalg.h"

namespace symcone {

namespace {

void RequireInCone(const SpectralDecomposition& sd, const char* what) {
  const double max_abs = sd.eigenvalues.cwiseAbs().maxCoeff();
  const double min_sigma = sd.eigenvalues.minCoeff();
  if (min_sigma < -sd.rank_tolerance * std::max(1.0, max_abs)) {
    throw DomainError(std::string(what) + " not in cone: smallest eigenvalue " +
                      std::to_string(min_sigma));
  }
}

bool BlockSumsNonzero(const AlgebraElement& y, double rank_tolerance) {
  const SpectralDecomposition sd = SpectralDecompose(y, rank_tolerance);
  const auto mask = sd.NonzeroMask();
  const double thr =
      rank_tolerance * std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
  const AlgebraDescriptor& d = y.descriptor();
  for (int b = 0; b < d.num_blocks(); ++b) {
    // Orthant blocks are sums of one-dimensional simple algebras.
    if (d.block(b).kind == BlockKind::kOrthant) continue;
    const int lo = d.rank_offset(b);
    const int hi = lo + d.block(b).rank();
    for (int i = lo; i < hi; ++i) {
      for (int j = i + 1; j < hi; ++j) {
        if (mask[i] && mask[j] &&
            std::abs(sd.eigenvalues[i] + sd.eigenvalues[j]) <= thr) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

AlgebraElement Project(const AlgebraElement& v) {
  return SpectralDecompose(v).Apply([](double s) { return std::max(s, 0.0); });
}

double MoreauResidual(const AlgebraElement& v) {
  return ((v - Project(v)) + Project(-v)).norm();
}

double DistanceToCone(const AlgebraElement& v) {
  return (v - Project(v)).norm();
}

Eigen::MatrixXd KernelOfL(const AlgebraElement& y, double kernel_tolerance) {
  // L_y is symmetric, so its singular values are |eigenvalues|.
  const SymmetricEigen eig = JacobiEigen(LOperatorMatrix(y));
  const double largest = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double cutoff = kernel_tolerance * largest;
  std::vector<int> idx;
  for (int i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues[i]) <= cutoff) idx.push_back(i);
  }
  Eigen::MatrixXd basis(y.dim(), static_cast<int>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) {
    basis.col(k) = eig.eigenvectors.col(idx[k]);
  }
  return basis;
}

MembershipCertificate MembershipCriterion(const AlgebraElement& lambda,
                                          const AlgebraElement& y,
                                          const MembershipOptions& options) {
  RequireSameAlgebra(lambda, y);
  const double defect = JordanProduct(y, lambda).norm();
  const double scale = std::max(1.0, y.norm() * lambda.norm());
  if (defect > options.complementarity_tolerance * scale) {
    throw PreconditionError("membership criterion needs y o lambda = 0; got " +
                            std::to_string(defect));
  }

  MembershipCertificate cert{.certificate_y = y};
  const Eigen::MatrixXd kernel = KernelOfL(y, options.kernel_tolerance);
  cert.kernel_dim = static_cast<int>(kernel.cols());
  if (cert.kernel_dim == 0) {
    cert.min_restricted_eigenvalue = std::numeric_limits<double>::infinity();
  } else {
    // <w o w, lambda> = <w, L_lambda w> on w = B a.
    const Eigen::MatrixXd restricted =
        kernel.transpose() * LOperatorMatrix(lambda) * kernel;
    cert.min_restricted_eigenvalue =
        MinSymmetricEigenvalue(0.5 * (restricted + restricted.transpose()));
  }
  cert.in_cone = cert.kernel_dim == 0 ||
                 cert.min_restricted_eigenvalue >
                     options.positivity_tolerance * (1.0 + lambda.norm());

  const SpectralDecomposition lsd =
      SpectralDecompose(lambda, options.rank_tolerance);
  cert.rank_of_lambda = lsd.Rank();
  cert.rank_of_y = Rank(y, options.rank_tolerance);
  cert.lambda_min_eigenvalue = lsd.eigenvalues.minCoeff();
  cert.y_block_sums_nonzero = BlockSumsNonzero(y, options.rank_tolerance);

  if (cert.in_cone) {
    const double thr = options.rank_tolerance *
                       std::max(1.0, lsd.eigenvalues.cwiseAbs().maxCoeff());
    if (cert.lambda_min_eigenvalue < -thr) {
      throw NumericalError(
          "membership criterion certified lambda but its smallest eigenvalue "
          "is " +
          std::to_string(cert.lambda_min_eigenvalue));
    }
  }
  return cert;
}

AlgebraElement ConstructCertificate(const AlgebraElement& lambda,
                                    double rank_tolerance) {
  const SpectralDecomposition sd = SpectralDecompose(lambda, rank_tolerance);
  RequireInCone(sd, "lambda");
  auto mask = sd.NonzeroMask();
  mask.flip();
  return sd.Idempotent(mask);
}

Eigen::MatrixXd LinealitySpaceBasis(const AlgebraElement& z,
                                    double rank_tolerance) {
  RequireInCone(SpectralDecompose(z, rank_tolerance), "z");
  const PeirceBasis pb =
      ComputePeirceBasis(SupportIdempotent(z, rank_tolerance));
  Eigen::MatrixXd basis(z.dim(), pb.one.cols() + pb.half.cols());
  basis << pb.one, pb.half;
  return basis;
}

Eigen::MatrixXd LinealityComplementBasis(const AlgebraElement& z,
                                         double rank_tolerance) {
  RequireInCone(SpectralDecompose(z, rank_tolerance), "z");
  return ComputePeirceBasis(SupportIdempotent(z, rank_tolerance)).zero;
}

}  // namespace symcone
