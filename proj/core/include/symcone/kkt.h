#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symcone/algebra.h"
#include "symcone/problem.h"
#include "symcone/spectral.h"

namespace symcone {

// (x, mu, lambda), or (x, y, mu, lambda) when `y` is set.
struct KKTPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd mu;
  AlgebraElement lambda;
  std::optional<AlgebraElement> y;
};

struct KKTResidualReport {
  double stationarity = 0.0;       // ||grad f - Dh^T mu - Dg^T lambda||
  double primal_eq = 0.0;          // ||h(x)||
  double cone_primal = 0.0;        // dist(g(x), K)
  double cone_dual = 0.0;          // dist(lambda, K)
  double complementarity = 0.0;    // ||lambda o g(x)|| or ||lambda o y||
  double slack_residual = 0.0;     // ||g(x) - y o y||, slack form only
  double max_residual = 0.0;
  bool slack_form = false;

  // Name of the largest component counted in max_residual.
  std::string Dominant() const;
};

struct LagrangianValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

// L(x, mu, lambda) = f(x) - <h(x), mu> - <g(x), lambda> and its x-gradient.
LagrangianValue Lagrangian(const ConeProblem& p, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& mu,
                           const AlgebraElement& lambda);

// Hessian of L in x, from the problem's callbacks when all are present and
// otherwise from central differences of the gradient (step
// eps^(1/3) (1 + |x_i|)), symmetrized.
Eigen::MatrixXd LagrangianHessian(const ConeProblem& p,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& mu,
                                  const AlgebraElement& lambda);

KKTResidualReport KktResidualP1(const ConeProblem& p, const KKTPoint& point);

// Slack system; dist(lambda, K) is reported but not part of max_residual.
// Throws PreconditionError if point.y is missing.
KKTResidualReport KktResidualP2(const ConeProblem& p, const KKTPoint& point);

struct ConversionOptions {
  // Residual the input point must satisfy.
  double kkt_tolerance = 1e-6;
  double rank_tolerance = kDefaultRankTolerance;
};

// (x, mu, lambda) -> (x, sqrt(g(x)), mu, lambda). Throws DomainError if g(x)
// is not in the cone and PreconditionError if the P1 residual is too large.
KKTPoint LiftToSlack(const ConeProblem& p, const KKTPoint& triple,
                     const ConversionOptions& options = {});

struct DropSlackResult {
  KKTPoint triple;
  bool valid = false;
  bool certified_by_criterion = false;
  bool strict_complementarity = false;
  KKTResidualReport p1_residual;
};

// Drops y. Valid when lambda passes the eigenvalue test or the kernel
// criterion certifies it with y. Throws PreconditionError if the P2 residual
// is too large.
DropSlackResult DropSlack(const ConeProblem& p, const KKTPoint& quadruple,
                          const ConversionOptions& options = {});

struct CqReport {
  bool holds = false;
  double min_singular_value = 0.0;
  int kernel_dim = 0;  // dimension of the w-space searched
  int unknowns = 0;    // kernel_dim + m
};

struct CqOptions {
  double kernel_tolerance = 1e-8;
  double rank_tolerance = kDefaultRankTolerance;
  // Full column rank when sigma_min > this * max(1, sigma_max).
  double singular_tolerance = 1e-8;
};

// LICQ for the slack problem at (x, y): w o y = 0 and
// Dg^T w + Dh^T v = 0 force w = 0, v = 0.
CqReport CheckLicqSlack(const ConeProblem& p, const Eigen::VectorXd& x,
                        const AlgebraElement& y, const CqOptions& options = {});

// Nondegeneracy at x: the same implication with w restricted to
// (lin T_{g(x)} K)^perp. Throws DomainError if g(x) is not in the cone.
CqReport CheckNondegeneracy(const ConeProblem& p, const Eigen::VectorXd& x,
                            const CqOptions& options = {});

struct MfcqOptions {
  int max_iterations = 500;
  double interior_tolerance = 1e-8;
  double singular_tolerance = 1e-8;
};

// One-sided: `confirmed` means Dh is surjective and a direction d with
// Dh d = 0, ||d|| <= 1 and lambda_min(g(x) + Dg d) > 0 was found.
struct MfcqReport {
  bool confirmed = false;
  bool jac_h_surjective = false;
  double best_min_eigenvalue = 0.0;
  Eigen::VectorXd direction;
  int iterations = 0;
};

MfcqReport CheckMfcq(const ConeProblem& p, const Eigen::VectorXd& x,
                     const MfcqOptions& options = {});

struct DerivativeCheck {
  double grad_f_error = 0.0;
  double jac_h_error = 0.0;
  double jac_g_error = 0.0;
  double max_error = 0.0;
};

// Largest relative discrepancy between the analytic first derivatives and
// central differences over the probe points.
DerivativeCheck ValidateDerivatives(const ConeProblem& p,
                                    const std::vector<Eigen::VectorXd>& probes);

}  // namespace symcone
