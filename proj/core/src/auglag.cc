#include "symcone/auglag.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "symcone/cone.h"
#include "symcone/errors.h"
#include "symcone/spectral.h"

namespace symcone {

namespace {

struct OuterStep {
  InnerResult inner;
  Eigen::VectorXd x;
  std::optional<AlgebraElement> y;
  AlgebraElement lambda_next;
};

// Shared outer loop; `step` minimizes the subproblem at (x_k, mu_k,
// lambda_k, rho_k) and returns x_{k+1} with the updated cone multiplier.
using StepFn = std::function<OuterStep(int k, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& mu,
                                       const AlgebraElement& lambda,
                                       double rho)>;

void CapNorm(Eigen::VectorXd* v, double cap, const char* what,
             SolveReport* report) {
  const double norm = v->norm();
  if (norm > cap) {
    *v *= cap / norm;
    report->warnings.push_back(std::string(what) + " clipped at norm " +
                               std::to_string(cap));
  }
}

SolveReport RunOuterLoop(const ConeProblem& p, const AuglagConfig& config,
                         const Eigen::VectorXd& x1, const Eigen::VectorXd& mu1,
                         const AlgebraElement& lambda1, const StepFn& step,
                         SolveReport report) {
  config.Validate();
  if (x1.size() != p.n || mu1.size() != p.m ||
      !(lambda1.descriptor() == p.algebra)) {
    throw StructuralError("start point dimensions do not match problem " +
                          p.name);
  }
  const auto start = std::chrono::steady_clock::now();

  Eigen::VectorXd x = x1;
  Eigen::VectorXd mu = mu1;
  AlgebraElement lambda = lambda1;
  double rho = InitialPenalty(p, x1, config);
  std::optional<double> previous_infeasibility;
  report.x_history.push_back(x);
  report.status = SolveStatus::kMaxOuter;

  for (int k = 1; k <= config.max_outer; ++k) {
    OuterStep out = step(k, x, mu, lambda, rho);
    const Eigen::VectorXd hx = p.EvalH(out.x);
    Eigen::VectorXd mu_next = mu - rho * hx;
    Eigen::VectorXd lambda_coords = out.lambda_next.coords();
    CapNorm(&mu_next, config.multiplier_cap, "mu", &report);
    CapNorm(&lambda_coords, config.multiplier_cap, "lambda", &report);
    const AlgebraElement lambda_next(p.algebra, std::move(lambda_coords));

    const KKTPoint point{out.x, mu_next, lambda_next, std::nullopt};
    const KKTResidualReport residual = KktResidualP1(p, point);

    IterationLog row;
    row.k = k;
    row.inner_iters = out.inner.iterations;
    row.rho = rho;
    row.infeas_h = residual.primal_eq;
    row.infeas_cone = residual.cone_primal;
    row.compl_ = residual.complementarity;
    row.kkt_residual = residual.max_residual;
    row.f = p.f(out.x);
    row.inner_status = out.inner.status;
    report.log.push_back(row);
    report.total_inner_iterations += out.inner.iterations;
    report.outer_iterations = k;
    report.x_history.push_back(out.x);
    report.final_residual = residual;
    if (out.inner.status != InnerStatus::kConverged) {
      report.warnings.push_back("outer " + std::to_string(k) + ": inner " +
                                ToString(out.inner.status) + ", |grad| = " +
                                std::to_string(out.inner.grad_norm));
    }

    const bool stuck = out.inner.status == InnerStatus::kLineSearchFailure &&
                       out.inner.iterations == 0;
    const double infeasibility = Infeasibility(p, out.x, lambda, rho);
    x = out.x;
    mu = std::move(mu_next);
    lambda = lambda_next;
    report.y = out.y;
    if (residual.max_residual <= config.kkt_tolerance) {
      report.status = SolveStatus::kConverged;
      break;
    }
    if (stuck) {
      report.status = SolveStatus::kInnerFailure;
      break;
    }
    rho = UpdatePenalty(rho, previous_infeasibility, infeasibility, config);
    previous_infeasibility = infeasibility;
  }

  report.x = x;
  report.mu = mu;
  report.lambda = lambda;
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace

void AuglagConfig::Validate() const {
  inner.Validate();
  if (!(rho_growth > 1.0) ||
      !(infeasibility_factor > 0.0 && infeasibility_factor < 1.0) ||
      !(kkt_tolerance > 0.0) || max_outer < 1 || !(multiplier_cap > 0.0) ||
      !(rho0 > 0.0) || !(rho_max >= 1.0)) {
    throw StructuralError("invalid augmented Lagrangian configuration");
  }
}

AuglagValue EvalAuglagSlack(const ConeProblem& p, const Eigen::VectorXd& x,
                            const AlgebraElement& y, const Eigen::VectorXd& mu,
                            const AlgebraElement& lambda, double rho) {
  const Eigen::VectorXd hx = p.EvalH(x);
  const AlgebraElement gx = p.g(x);
  const AlgebraElement residual = gx - JordanProduct(y, y);
  // lambda - rho (g - y o y): the multiplier the update would produce.
  const AlgebraElement shifted = lambda - rho * residual;
  AuglagValue out;
  out.value = p.f(x) - hx.dot(mu) + 0.5 * rho * hx.squaredNorm() -
              Inner(residual, lambda) + 0.5 * rho * residual.coords().squaredNorm();
  out.gradient.resize(p.n + p.algebra.dim());
  out.gradient.head(p.n) = p.grad_f(x) -
                           p.EvalJacH(x).transpose() * (mu - rho * hx) -
                           p.jac_g(x).transpose() * shifted.coords();
  out.gradient.tail(p.algebra.dim()) = 2.0 * JordanProduct(y, shifted).coords();
  return out;
}

AuglagValue EvalAuglagSym(const ConeProblem& p, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& mu,
                          const AlgebraElement& lambda, double rho) {
  const Eigen::VectorXd hx = p.EvalH(x);
  const AlgebraElement projected = Project(lambda - rho * p.g(x));
  AuglagValue out;
  out.value = p.f(x) - hx.dot(mu) + 0.5 * rho * hx.squaredNorm() +
              (projected.coords().squaredNorm() -
               lambda.coords().squaredNorm()) /
                  (2.0 * rho);
  out.gradient = p.grad_f(x) - p.EvalJacH(x).transpose() * (mu - rho * hx) -
                 p.jac_g(x).transpose() * projected.coords();
  return out;
}

AlgebraElement ArgminYSlack(const AlgebraElement& g_value,
                            const AlgebraElement& lambda, double rho) {
  return SqrtElement(Project(g_value - (1.0 / rho) * lambda));
}

double Infeasibility(const ConeProblem& p, const Eigen::VectorXd& x,
                     const AlgebraElement& lambda, double rho) {
  const AlgebraElement gx = p.g(x);
  const double cone = (gx - Project(gx - (1.0 / rho) * lambda)).norm();
  return std::max(p.EvalH(x).norm(), cone);
}

double UpdatePenalty(double rho, std::optional<double> previous_infeasibility,
                     double infeasibility, const AuglagConfig& config) {
  if (!previous_infeasibility) return rho;
  if (infeasibility <= config.infeasibility_factor * *previous_infeasibility) {
    return rho;
  }
  return std::max(rho, std::min(rho * config.rho_growth, config.rho_max));
}

double InitialPenalty(const ConeProblem& p, const Eigen::VectorXd& x1,
                      const AuglagConfig& config) {
  if (config.rho0_mode == PenaltyStart::kFixed) return config.rho0;
  const double hn = p.EvalH(x1).norm();
  const double dist = DistanceToCone(p.g(x1));
  const double rho = 10.0 * std::abs(p.f(x1)) / (1.0 + hn * hn + dist * dist);
  return std::clamp(rho, 1.0, config.rho_max);
}

std::string ToString(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kMaxOuter:
      return "max_outer";
    case SolveStatus::kInnerFailure:
      return "inner_failure";
  }
  return {};
}

SolveReport SolveAlgorithm1(const ConeProblem& p, const AuglagConfig& config,
                            const Eigen::VectorXd& x1,
                            const Eigen::VectorXd& mu1,
                            const AlgebraElement& lambda1,
                            const std::optional<AlgebraElement>& y1) {
  const int n = p.n;
  const int dim = p.algebra.dim();
  StepFn step = [&](int k, const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                    const AlgebraElement& lambda, double rho) {
    const AlgebraElement y_start =
        (k == 1 && y1) ? *y1
                       : SqrtAbsElement(p.g(x) - (1.0 / rho) * lambda);
    Eigen::VectorXd z0(n + dim);
    z0 << x, y_start.coords();
    const SmoothObjective objective = [&](const Eigen::VectorXd& z,
                                          Eigen::VectorXd* grad) {
      const AlgebraElement y(p.algebra, z.tail(dim));
      AuglagValue v = EvalAuglagSlack(p, z.head(n), y, mu, lambda, rho);
      *grad = std::move(v.gradient);
      return v.value;
    };
    OuterStep out{MinimizeLbfgs(objective, z0, config.inner), {}, {},
                  AlgebraElement::Zero(p.algebra)};
    out.x = out.inner.minimizer.head(n);
    const AlgebraElement y(p.algebra, out.inner.minimizer.tail(dim));
    out.lambda_next = lambda - rho * (p.g(out.x) - JordanProduct(y, y));
    out.y = y;
    return out;
  };
  SolveReport report;
  report.algorithm = "alg1_slack";
  report.inner_dimension = n + dim;
  return RunOuterLoop(p, config, x1, mu1, lambda1, step, std::move(report));
}

SolveReport SolveAlgorithm2(const ConeProblem& p, const AuglagConfig& config,
                            const Eigen::VectorXd& x1,
                            const Eigen::VectorXd& mu1,
                            const AlgebraElement& lambda1) {
  StepFn step = [&](int, const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                    const AlgebraElement& lambda, double rho) {
    const SmoothObjective objective = [&](const Eigen::VectorXd& z,
                                          Eigen::VectorXd* grad) {
      AuglagValue v = EvalAuglagSym(p, z, mu, lambda, rho);
      *grad = std::move(v.gradient);
      return v.value;
    };
    OuterStep out{MinimizeLbfgs(objective, x, config.inner), {}, {},
                  AlgebraElement::Zero(p.algebra)};
    out.x = out.inner.minimizer;
    out.lambda_next = Project(lambda - rho * p.g(out.x));
    return out;
  };
  SolveReport report;
  report.algorithm = "alg2_projection";
  report.inner_dimension = p.n;
  return RunOuterLoop(p, config, x1, mu1, lambda1, step, std::move(report));
}

void WriteIterationCsv(const SolveReport& report, std::ostream& out) {
  out << "k,inner_iters,rho,infeas_h,infeas_cone,compl,kkt_residual,f\n";
  char buf[256];
  for (const IterationLog& row : report.log) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  row.k, row.inner_iters, row.rho, row.infeas_h,
                  row.infeas_cone, row.compl_, row.kkt_residual, row.f);
    out << buf;
  }
}

}  // namespace symcone
