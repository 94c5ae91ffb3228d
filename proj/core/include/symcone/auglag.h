#pragma once

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symcone/algebra.h"
#include "symcone/inner_solver.h"
#include "symcone/kkt.h"
#include "symcone/problem.h"

namespace symcone {

enum class PenaltyStart { kFixed, kScaledByProblem };

struct AuglagConfig {
  PenaltyStart rho0_mode = PenaltyStart::kScaledByProblem;
  double rho0 = 10.0;          // used when rho0_mode == kFixed
  double rho_growth = 10.0;    // gamma > 1
  double infeasibility_factor = 0.5;  // tau in (0, 1)
  double rho_max = 1e8;
  double kkt_tolerance = 1e-4;
  int max_outer = 50;
  double multiplier_cap = 1e8;  // on ||mu|| and ||lambda||
  InnerConfig inner;

  // Throws StructuralError on invalid settings.
  void Validate() const;
};

struct AuglagValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

// Augmented Lagrangian of the slack problem
//   f - <h, mu> + rho/2 |h|^2 - <g - y o y, lambda> + rho/2 |g - y o y|^2.
// gradient = (x-part; y-part) with y-part 2 y o (lambda - rho (g - y o y)).
AuglagValue EvalAuglagSlack(const ConeProblem& p, const Eigen::VectorXd& x,
                            const AlgebraElement& y, const Eigen::VectorXd& mu,
                            const AlgebraElement& lambda, double rho);

// Augmented Lagrangian without slack
//   f - <h, mu> + rho/2 |h|^2 + (|[lambda - rho g]+|^2 - |lambda|^2) / (2 rho).
AuglagValue EvalAuglagSym(const ConeProblem& p, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& mu,
                          const AlgebraElement& lambda, double rho);

// sqrt([g - lambda / rho]+): minimizes EvalAuglagSlack over y.
AlgebraElement ArgminYSlack(const AlgebraElement& g_value,
                            const AlgebraElement& lambda, double rho);

// max(||h(x)||, ||g(x) - [g(x) - lambda / rho]+||).
double Infeasibility(const ConeProblem& p, const Eigen::VectorXd& x,
                     const AlgebraElement& lambda, double rho);

// rho * gamma unless the infeasibility dropped to tau times its previous
// value; never decreases and never exceeds rho_max. An empty `previous`
// keeps rho.
double UpdatePenalty(double rho, std::optional<double> previous_infeasibility,
                     double infeasibility, const AuglagConfig& config);

double InitialPenalty(const ConeProblem& p, const Eigen::VectorXd& x1,
                      const AuglagConfig& config);

enum class SolveStatus { kConverged, kMaxOuter, kInnerFailure };

std::string ToString(SolveStatus s);

struct IterationLog {
  int k = 0;
  int inner_iters = 0;
  double rho = 0.0;
  double infeas_h = 0.0;
  double infeas_cone = 0.0;
  double compl_ = 0.0;
  double kkt_residual = 0.0;
  double f = 0.0;
  InnerStatus inner_status = InnerStatus::kConverged;
};

struct SolveReport {
  std::string algorithm;
  SolveStatus status = SolveStatus::kMaxOuter;
  Eigen::VectorXd x;
  Eigen::VectorXd mu;
  std::optional<AlgebraElement> lambda;
  std::optional<AlgebraElement> y;
  int outer_iterations = 0;
  int total_inner_iterations = 0;
  // Dimension of the inner problem.
  int inner_dimension = 0;
  double seconds = 0.0;
  KKTResidualReport final_residual;
  std::vector<IterationLog> log;
  // x_1, x_2, ...: the start point followed by every inner minimizer.
  std::vector<Eigen::VectorXd> x_history;
  std::vector<std::string> warnings;
};

// Squared-slack method: minimize EvalAuglagSlack over (x, y), then
//   mu <- mu - rho h(x),  lambda <- lambda - rho (g(x) - y o y).
// The first inner solve starts from y1 when given; every other one from
// y = sqrt(|g(x_k) - lambda_k / rho_k|) (spectral absolute value). A zero
// eigenvalue in the start y is a stationary point of the y-gradient that
// the quasi-Newton iteration cannot leave.
SolveReport SolveAlgorithm1(
    const ConeProblem& p, const AuglagConfig& config,
    const Eigen::VectorXd& x1, const Eigen::VectorXd& mu1,
    const AlgebraElement& lambda1,
    const std::optional<AlgebraElement>& y1 = std::nullopt);

// Projection method: minimize EvalAuglagSym over x, then
//   mu <- mu - rho h(x),  lambda <- [lambda - rho g(x)]+.
SolveReport SolveAlgorithm2(const ConeProblem& p, const AuglagConfig& config,
                            const Eigen::VectorXd& x1,
                            const Eigen::VectorXd& mu1,
                            const AlgebraElement& lambda1);

// k,inner_iters,rho,infeas_h,infeas_cone,compl,kkt_residual,f
void WriteIterationCsv(const SolveReport& report, std::ostream& out);

}  // namespace symcone
