#include "symcone/kkt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "symcone/cone.h"
#include "symcone/errors.h"
#include "symcone/linalg.h"

namespace symcone {

namespace {

const double kFdStep = std::cbrt(std::numeric_limits<double>::epsilon());

void RequireDims(const ConeProblem& p, const KKTPoint& point) {
  if (point.x.size() != p.n || point.mu.size() != p.m ||
      !(point.lambda.descriptor() == p.algebra)) {
    throw StructuralError("KKT point dimensions do not match problem " +
                          p.name);
  }
}

CqReport FullColumnRank(const Eigen::MatrixXd& system, int kernel_dim,
                        const CqOptions& options) {
  CqReport report;
  report.kernel_dim = kernel_dim;
  report.unknowns = static_cast<int>(system.cols());
  report.min_singular_value = MinSingularValue(system);
  if (report.unknowns == 0) {
    report.holds = true;
    return report;
  }
  const double sigma_max = MaxSingularValue(system);
  report.holds = report.min_singular_value >
                 options.singular_tolerance * std::max(1.0, sigma_max);
  return report;
}

// [Dg^T B, Dh^T]: the adjoint system restricted to w = B a.
Eigen::MatrixXd RestrictedAdjoint(const ConeProblem& p,
                                  const Eigen::VectorXd& x,
                                  const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd dg = p.jac_g(x);
  const Eigen::MatrixXd dh = p.EvalJacH(x);
  Eigen::MatrixXd system(p.n, basis.cols() + p.m);
  system << dg.transpose() * basis, dh.transpose();
  return system;
}

}  // namespace

std::string KKTResidualReport::Dominant() const {
  std::string name = "stationarity";
  double best = stationarity;
  auto consider = [&](const char* n, double v) {
    if (v > best) {
      best = v;
      name = n;
    }
  };
  consider("primal_eq", primal_eq);
  consider("cone_primal", cone_primal);
  if (!slack_form) consider("cone_dual", cone_dual);
  consider("complementarity", complementarity);
  if (slack_form) consider("slack_residual", slack_residual);
  return name;
}

LagrangianValue Lagrangian(const ConeProblem& p, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& mu,
                           const AlgebraElement& lambda) {
  const Eigen::VectorXd hx = p.EvalH(x);
  const AlgebraElement gx = p.g(x);
  LagrangianValue out;
  out.value = p.f(x) - hx.dot(mu) - Inner(gx, lambda);
  out.gradient = p.grad_f(x) - p.EvalJacH(x).transpose() * mu -
                 p.jac_g(x).transpose() * lambda.coords();
  return out;
}

Eigen::MatrixXd LagrangianHessian(const ConeProblem& p,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& mu,
                                  const AlgebraElement& lambda) {
  Eigen::MatrixXd hess(p.n, p.n);
  if (p.HasHessians()) {
    hess = p.hess_f(x) - p.hess_g_weighted(x, lambda);
    if (p.m > 0) hess -= p.hess_h_weighted(x, mu);
  } else {
    Eigen::VectorXd xp = x;
    for (int i = 0; i < p.n; ++i) {
      const double step = kFdStep * (1.0 + std::abs(x[i]));
      xp[i] = x[i] + step;
      const Eigen::VectorXd up = Lagrangian(p, xp, mu, lambda).gradient;
      xp[i] = x[i] - step;
      const Eigen::VectorXd down = Lagrangian(p, xp, mu, lambda).gradient;
      xp[i] = x[i];
      hess.col(i) = (up - down) / (2.0 * step);
    }
  }
  return 0.5 * (hess + hess.transpose());
}

KKTResidualReport KktResidualP1(const ConeProblem& p, const KKTPoint& point) {
  RequireDims(p, point);
  const AlgebraElement gx = p.g(point.x);
  KKTResidualReport r;
  r.stationarity =
      Lagrangian(p, point.x, point.mu, point.lambda).gradient.norm();
  r.primal_eq = p.EvalH(point.x).norm();
  r.cone_primal = DistanceToCone(gx);
  r.cone_dual = DistanceToCone(point.lambda);
  r.complementarity = JordanProduct(point.lambda, gx).norm();
  r.max_residual = std::max({r.stationarity, r.primal_eq, r.cone_primal,
                             r.cone_dual, r.complementarity});
  return r;
}

KKTResidualReport KktResidualP2(const ConeProblem& p, const KKTPoint& point) {
  RequireDims(p, point);
  if (!point.y) {
    throw PreconditionError("slack KKT residual needs y");
  }
  const AlgebraElement& y = *point.y;
  RequireSameAlgebra(y, point.lambda);
  const AlgebraElement gx = p.g(point.x);
  KKTResidualReport r;
  r.slack_form = true;
  r.stationarity =
      Lagrangian(p, point.x, point.mu, point.lambda).gradient.norm();
  r.primal_eq = p.EvalH(point.x).norm();
  r.cone_primal = DistanceToCone(gx);
  r.cone_dual = DistanceToCone(point.lambda);
  r.complementarity = JordanProduct(point.lambda, y).norm();
  r.slack_residual = (gx - JordanProduct(y, y)).norm();
  r.max_residual = std::max({r.stationarity, r.primal_eq, r.cone_primal,
                             r.complementarity, r.slack_residual});
  return r;
}

KKTPoint LiftToSlack(const ConeProblem& p, const KKTPoint& triple,
                     const ConversionOptions& options) {
  const KKTResidualReport r = KktResidualP1(p, triple);
  if (r.max_residual > options.kkt_tolerance) {
    throw PreconditionError("lift to slack needs a KKT triple; residual " +
                            std::to_string(r.max_residual) + " (" +
                            r.Dominant() + ")");
  }
  KKTPoint quad = triple;
  quad.y = SqrtElement(p.g(triple.x), options.rank_tolerance);
  return quad;
}

DropSlackResult DropSlack(const ConeProblem& p, const KKTPoint& quadruple,
                          const ConversionOptions& options) {
  const KKTResidualReport r2 = KktResidualP2(p, quadruple);
  if (r2.max_residual > options.kkt_tolerance) {
    throw PreconditionError("drop slack needs a KKT quadruple; residual " +
                            std::to_string(r2.max_residual) + " (" +
                            r2.Dominant() + ")");
  }
  DropSlackResult out{quadruple, false, false, false, {}};
  out.triple.y.reset();

  const SpectralDecomposition lsd =
      SpectralDecompose(quadruple.lambda, options.rank_tolerance);
  const double thr = options.rank_tolerance *
                     std::max(1.0, lsd.eigenvalues.cwiseAbs().maxCoeff());
  const bool eigen_ok = lsd.eigenvalues.minCoeff() >= -thr;

  try {
    MembershipOptions mopts;
    mopts.rank_tolerance = options.rank_tolerance;
    // Accept the same complementarity slack the residual check allowed.
    mopts.complementarity_tolerance =
        std::max(mopts.complementarity_tolerance, options.kkt_tolerance);
    const MembershipCertificate cert =
        MembershipCriterion(quadruple.lambda, *quadruple.y, mopts);
    out.certified_by_criterion = cert.in_cone;
  } catch (const PreconditionError&) {
    out.certified_by_criterion = false;
  }

  out.valid = eigen_ok || out.certified_by_criterion;
  out.p1_residual = KktResidualP1(p, out.triple);
  if (out.certified_by_criterion) {
    out.strict_complementarity = true;
  } else if (out.valid) {
    out.strict_complementarity =
        lsd.Rank() + Rank(p.g(quadruple.x), options.rank_tolerance) ==
        p.algebra.rank();
  }
  return out;
}

CqReport CheckLicqSlack(const ConeProblem& p, const Eigen::VectorXd& x,
                        const AlgebraElement& y, const CqOptions& options) {
  const Eigen::MatrixXd kernel = KernelOfL(y, options.kernel_tolerance);
  return FullColumnRank(RestrictedAdjoint(p, x, kernel),
                        static_cast<int>(kernel.cols()), options);
}

CqReport CheckNondegeneracy(const ConeProblem& p, const Eigen::VectorXd& x,
                            const CqOptions& options) {
  const Eigen::MatrixXd complement =
      LinealityComplementBasis(p.g(x), options.rank_tolerance);
  return FullColumnRank(RestrictedAdjoint(p, x, complement),
                        static_cast<int>(complement.cols()), options);
}

MfcqReport CheckMfcq(const ConeProblem& p, const Eigen::VectorXd& x,
                     const MfcqOptions& options) {
  MfcqReport report;
  report.direction = Eigen::VectorXd::Zero(p.n);
  const Eigen::MatrixXd dh = p.EvalJacH(x);
  if (p.m == 0) {
    report.jac_h_surjective = true;
  } else {
    const Eigen::MatrixXd dht = dh.transpose();
    report.jac_h_surjective =
        MinSingularValue(dht) >
        options.singular_tolerance * std::max(1.0, MaxSingularValue(dht));
  }

  const AlgebraElement gx = p.g(x);
  const Eigen::MatrixXd dg = p.jac_g(x);
  // Directions d = N a with N an orthonormal basis of ker Dh; ||d|| = ||a||.
  const Eigen::MatrixXd basis =
      p.m == 0 ? Eigen::MatrixXd::Identity(p.n, p.n) : NullSpace(dh);
  const Eigen::MatrixXd reduced = dg * basis;

  auto evaluate = [&](const Eigen::VectorXd& a, Eigen::VectorXd* supergrad) {
    const AlgebraElement moved(p.algebra, gx.coords() + reduced * a);
    const SpectralDecomposition sd = SpectralDecompose(moved);
    Eigen::Index arg;
    const double value = sd.eigenvalues.minCoeff(&arg);
    if (supergrad) {
      // d/da lambda_min = <c_min, Dg N da>.
      *supergrad = reduced.transpose() * sd.frame[arg].coords();
    }
    return value;
  };

  Eigen::VectorXd a = Eigen::VectorXd::Zero(basis.cols());
  Eigen::VectorXd best_a = a;
  Eigen::VectorXd sg;
  double best = evaluate(a, &sg);
  int it = 0;
  while (best <= options.interior_tolerance && it < options.max_iterations &&
         basis.cols() > 0) {
    ++it;
    const double sg_norm = sg.norm();
    if (sg_norm == 0.0) break;
    a += sg / (sg_norm * std::sqrt(static_cast<double>(it)));
    const double a_norm = a.norm();
    if (a_norm > 1.0) a /= a_norm;
    const double value = evaluate(a, &sg);
    if (value > best) {
      best = value;
      best_a = a;
    }
  }
  report.iterations = it;
  report.best_min_eigenvalue = best;
  report.direction = basis * best_a;
  report.confirmed =
      report.jac_h_surjective && best > options.interior_tolerance;
  return report;
}

DerivativeCheck ValidateDerivatives(
    const ConeProblem& p, const std::vector<Eigen::VectorXd>& probes) {
  DerivativeCheck out;
  auto rel = [](const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& fd) {
    return (analytic - fd).norm() / std::max(1.0, analytic.norm());
  };
  for (const Eigen::VectorXd& x : probes) {
    Eigen::VectorXd fd_grad(p.n);
    Eigen::MatrixXd fd_jh(p.m, p.n);
    Eigen::MatrixXd fd_jg(p.algebra.dim(), p.n);
    Eigen::VectorXd xp = x;
    for (int i = 0; i < p.n; ++i) {
      const double step = kFdStep * (1.0 + std::abs(x[i]));
      xp[i] = x[i] + step;
      const double f_up = p.f(xp);
      const Eigen::VectorXd h_up = p.EvalH(xp);
      const Eigen::VectorXd g_up = p.g(xp).coords();
      xp[i] = x[i] - step;
      const double f_dn = p.f(xp);
      const Eigen::VectorXd h_dn = p.EvalH(xp);
      const Eigen::VectorXd g_dn = p.g(xp).coords();
      xp[i] = x[i];
      fd_grad[i] = (f_up - f_dn) / (2.0 * step);
      fd_jh.col(i) = (h_up - h_dn) / (2.0 * step);
      fd_jg.col(i) = (g_up - g_dn) / (2.0 * step);
    }
    out.grad_f_error = std::max(out.grad_f_error, rel(p.grad_f(x), fd_grad));
    if (p.m > 0) {
      out.jac_h_error = std::max(out.jac_h_error, rel(p.EvalJacH(x), fd_jh));
    }
    out.jac_g_error = std::max(out.jac_g_error, rel(p.jac_g(x), fd_jg));
  }
  out.max_error = std::max({out.grad_f_error, out.jac_h_error, out.jac_g_error});
  return out;
}

}  // namespace symcone
