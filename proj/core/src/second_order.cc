#include "symcone/second_order.h"

#include <cmath>
#include <limits>
#include <string>

#include "symcone/cone.h"
#include "symcone/errors.h"
#include "symcone/linalg.h"
#include "symcone/spectral.h"

namespace symcone {

namespace {

SecondOrderReport Evaluate(const ConeProblem& p, const KKTPoint& point,
                           const AlgebraElement& y,
                           const SecondOrderOptions& options) {
  SecondOrderReport report;
  const Eigen::MatrixXd basis =
      CriticalSubspaceBasis(p, point.x, y, options.subspace_tolerance);
  report.subspace_dim = static_cast<int>(basis.cols());
  const Eigen::MatrixXd form =
      SecondOrderFormMatrix(p, point.x, point.mu, point.lambda);
  report.form_norm = form.norm();
  const double scale = 1.0 + report.form_norm;

  if (report.subspace_dim == 0) {
    report.vacuous = true;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    report.verdict = SecondOrderVerdict::kSoscHolds;
  } else {
    const Eigen::MatrixXd reduced = basis.transpose() * form * basis;
    report.asymmetry = (reduced - reduced.transpose()).norm();
    if (report.asymmetry > 1e-10 * scale) {
      throw NumericalError("reduced Hessian is not symmetric: " +
                           std::to_string(report.asymmetry));
    }
    report.min_eigenvalue =
        MinSymmetricEigenvalue(0.5 * (reduced + reduced.transpose()));
    if (report.min_eigenvalue > options.sosc_tolerance * scale) {
      report.verdict = SecondOrderVerdict::kSoscHolds;
    } else if (report.min_eigenvalue >= -options.sonc_tolerance * scale) {
      report.verdict = SecondOrderVerdict::kSoncHoldsOnly;
    } else {
      report.verdict = SecondOrderVerdict::kFails;
    }
  }

  if (report.verdict == SecondOrderVerdict::kSoscHolds) {
    report.strict_complementarity_implied = true;
    // Taking v = 0 leaves <w o w, lambda> > 0 on ker L_y.
    try {
      MembershipOptions mopts;
      mopts.rank_tolerance = options.rank_tolerance;
      mopts.complementarity_tolerance =
          std::max(mopts.complementarity_tolerance, options.kkt_tolerance);
      const MembershipCertificate cert =
          MembershipCriterion(point.lambda, y, mopts);
      report.membership_cross_check =
          cert.in_cone &&
          cert.rank_of_lambda + cert.rank_of_y == p.algebra.rank();
    } catch (const PreconditionError&) {
      report.membership_cross_check = false;
    }
  }
  return report;
}

void RequireTriple(const ConeProblem& p, const KKTPoint& triple,
                   const SecondOrderOptions& options) {
  const KKTResidualReport r = KktResidualP1(p, triple);
  if (r.max_residual > options.kkt_tolerance) {
    throw PreconditionError("second-order check needs a KKT triple; residual " +
                            std::to_string(r.max_residual) + " (" +
                            r.Dominant() + ")");
  }
}

}  // namespace

std::string ToString(SecondOrderVerdict v) {
  switch (v) {
    case SecondOrderVerdict::kSoscHolds:
      return "SOSC_holds";
    case SecondOrderVerdict::kSoncHoldsOnly:
      return "SONC_holds_only";
    case SecondOrderVerdict::kFails:
      return "fails";
  }
  return {};
}

Eigen::MatrixXd CriticalSubspaceBasis(const ConeProblem& p,
                                      const Eigen::VectorXd& x,
                                      const AlgebraElement& y,
                                      double tolerance) {
  const int dim = p.algebra.dim();
  Eigen::MatrixXd constraints = Eigen::MatrixXd::Zero(dim + p.m, p.n + dim);
  constraints.topLeftCorner(dim, p.n) = p.jac_g(x);
  constraints.topRightCorner(dim, dim) = -2.0 * LOperatorMatrix(y);
  if (p.m > 0) constraints.bottomLeftCorner(p.m, p.n) = p.EvalJacH(x);
  return NullSpace(constraints, tolerance);
}

Eigen::MatrixXd SecondOrderFormMatrix(const ConeProblem& p,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& mu,
                                      const AlgebraElement& lambda) {
  const int dim = p.algebra.dim();
  Eigen::MatrixXd form = Eigen::MatrixXd::Zero(p.n + dim, p.n + dim);
  form.topLeftCorner(p.n, p.n) = LagrangianHessian(p, x, mu, lambda);
  form.bottomRightCorner(dim, dim) = 2.0 * LOperatorMatrix(lambda);
  return form;
}

double QuadraticForm(const ConeProblem& p, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& mu, const AlgebraElement& lambda,
                     const Eigen::VectorXd& v, const AlgebraElement& w) {
  const Eigen::MatrixXd hess = LagrangianHessian(p, x, mu, lambda);
  return v.dot(hess * v) + 2.0 * Inner(JordanProduct(w, w), lambda);
}

SecondOrderReport CheckSoscNscp(const ConeProblem& p, const KKTPoint& triple,
                                const SecondOrderOptions& options) {
  RequireTriple(p, triple, options);
  const AlgebraElement y = SqrtElement(p.g(triple.x), options.rank_tolerance);
  return Evaluate(p, triple, y, options);
}

SecondOrderReport CheckSoncNscp(const ConeProblem& p, const KKTPoint& triple,
                                const SecondOrderOptions& options) {
  SecondOrderReport report = CheckSoscNscp(p, triple, options);
  CqOptions cq;
  cq.rank_tolerance = options.rank_tolerance;
  report.nondegenerate = CheckNondegeneracy(p, triple.x, cq).holds;
  return report;
}

SecondOrderReport CheckSoscSlack(const ConeProblem& p,
                                 const KKTPoint& quadruple,
                                 const SecondOrderOptions& options) {
  const KKTResidualReport r = KktResidualP2(p, quadruple);
  if (r.max_residual > options.kkt_tolerance) {
    throw PreconditionError("slack second-order check needs a KKT quadruple; "
                            "residual " +
                            std::to_string(r.max_residual) + " (" +
                            r.Dominant() + ")");
  }
  return Evaluate(p, quadruple, *quadruple.y, options);
}

}  // namespace symcone
