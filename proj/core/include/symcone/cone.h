#pragma once

#include <Eigen/Dense>

#include "symcone/algebra.h"
#include "symcone/spectral.h"

namespace symcone {

// Euclidean projection onto the cone of squares: negative eigenvalues are
// set to zero.
AlgebraElement Project(const AlgebraElement& v);

// ||(v - [v]+) + [-v]+||; zero up to rounding for every v.
double MoreauResidual(const AlgebraElement& v);

// ||v - [v]+||.
double DistanceToCone(const AlgebraElement& v);

struct MembershipOptions {
  // y o lambda must vanish to this (times max(1, ||y|| ||lambda||)).
  double complementarity_tolerance = 1e-8;
  // Singular values of L_y at or below this times the largest are zero.
  double kernel_tolerance = 1e-8;
  // The restricted form must exceed this times (1 + ||lambda||).
  double positivity_tolerance = 1e-10;
  double rank_tolerance = kDefaultRankTolerance;
};

// Outcome of the kernel test: lambda is in the cone iff some y with
// y o lambda = 0 makes w -> <w o w, lambda> positive definite on ker L_y.
struct MembershipCertificate {
  bool in_cone = false;
  int rank_of_lambda = 0;
  int rank_of_y = 0;
  AlgebraElement certificate_y;
  // +infinity when ker L_y is trivial.
  double min_restricted_eigenvalue = 0.0;
  int kernel_dim = 0;
  // Nonzero eigenvalues of y within one block never sum to zero.
  bool y_block_sums_nonzero = true;
  // Independent check: smallest eigenvalue of lambda.
  double lambda_min_eigenvalue = 0.0;
};

// Throws PreconditionError if y o lambda != 0 and NumericalError if the
// verdict contradicts the eigenvalue test on lambda.
MembershipCertificate MembershipCriterion(const AlgebraElement& lambda,
                                          const AlgebraElement& y,
                                          const MembershipOptions& options = {});

// The idempotent on the zero-eigenvalue part of lambda's frame. Throws
// DomainError if lambda is not in the cone.
AlgebraElement ConstructCertificate(
    const AlgebraElement& lambda,
    double rank_tolerance = kDefaultRankTolerance);

// Orthonormal basis of lin T_z K = V(c, 1) + V(c, 1/2), c the support
// idempotent of z. Throws DomainError if z is not in the cone.
Eigen::MatrixXd LinealitySpaceBasis(
    const AlgebraElement& z, double rank_tolerance = kDefaultRankTolerance);

// Orthonormal basis of (lin T_z K)^perp = V(c, 0).
Eigen::MatrixXd LinealityComplementBasis(
    const AlgebraElement& z, double rank_tolerance = kDefaultRankTolerance);

// Orthonormal basis of ker L_y.
Eigen::MatrixXd KernelOfL(const AlgebraElement& y,
                          double kernel_tolerance = 1e-8);

}  // namespace symcone
