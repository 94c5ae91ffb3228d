#pragma once

#include <string>

#include <Eigen/Dense>

#include "symcone/algebra.h"
#include "symcone/kkt.h"
#include "symcone/problem.h"

namespace symcone {

enum class SecondOrderVerdict { kSoscHolds, kSoncHoldsOnly, kFails };

std::string ToString(SecondOrderVerdict v);

// Result of testing
//   Q(v, w) = <Hess_x L v, v> + 2 <w o w, lambda>
// on the subspace {(v, w) : Dg v - 2 y o w = 0, Dh v = 0}.
struct SecondOrderReport {
  int subspace_dim = 0;
  // +infinity when the subspace is {0}.
  double min_eigenvalue = 0.0;
  SecondOrderVerdict verdict = SecondOrderVerdict::kFails;
  bool strict_complementarity_implied = false;
  // Subspace is {0}, so SOSC holds without any test.
  bool vacuous = false;
  // For SOSC: the kernel criterion on (lambda, y) agrees and
  // rank lambda + rank y = r. Unchecked (false) otherwise.
  bool membership_cross_check = false;
  // Nondegeneracy at x; only evaluated by the SONC check.
  bool nondegenerate = true;
  double form_norm = 0.0;
  double asymmetry = 0.0;
};

struct SecondOrderOptions {
  double kkt_tolerance = 1e-6;
  double subspace_tolerance = 1e-8;
  double sosc_tolerance = 1e-8;   // min eig > this * (1 + ||Q||)
  double sonc_tolerance = 1e-6;   // min eig >= -this * (1 + ||Q||)
  double rank_tolerance = kDefaultRankTolerance;
};

// Orthonormal basis (columns) of {(v, w)}: null space of
// [Dg, -2 L_y; Dh, 0]. Rows are x coordinates then algebra coordinates.
Eigen::MatrixXd CriticalSubspaceBasis(const ConeProblem& p,
                                      const Eigen::VectorXd& x,
                                      const AlgebraElement& y,
                                      double tolerance = 1e-8);

double QuadraticForm(const ConeProblem& p, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& mu, const AlgebraElement& lambda,
                     const Eigen::VectorXd& v, const AlgebraElement& w);

// Block-diagonal matrix diag(Hess_x L, 2 L_lambda) of Q.
Eigen::MatrixXd SecondOrderFormMatrix(const ConeProblem& p,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& mu,
                                      const AlgebraElement& lambda);

// SOSC for the conic problem, using y = sqrt(g(x)). Throws
// PreconditionError for a non-KKT triple and DomainError if g(x) is not in
// the cone.
SecondOrderReport CheckSoscNscp(const ConeProblem& p, const KKTPoint& triple,
                                const SecondOrderOptions& options = {});

// Same test read as a necessary condition; `nondegenerate` records whether
// its hypothesis holds.
SecondOrderReport CheckSoncNscp(const ConeProblem& p, const KKTPoint& triple,
                                const SecondOrderOptions& options = {});

// SOSC for the slack problem with the quadruple's own y.
SecondOrderReport CheckSoscSlack(const ConeProblem& p,
                                 const KKTPoint& quadruple,
                                 const SecondOrderOptions& options = {});

}  // namespace symcone
