#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace symcone {

struct InnerConfig {
  double grad_tolerance = 1e-8;
  int max_iterations = 5000;
  int memory = 10;
  double armijo_c1 = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 60;
  // Relative size of rounding noise in f. Below it, sufficient decrease is
  // judged from gradients instead of values.
  double value_noise = 1e-12;

  // Throws StructuralError on invalid settings.
  void Validate() const;
};

enum class InnerStatus { kConverged, kMaxIterations, kLineSearchFailure };

std::string ToString(InnerStatus s);

struct InnerResult {
  Eigen::VectorXd minimizer;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  InnerStatus status = InnerStatus::kMaxIterations;
};

// Returns f(x) and writes the gradient.
using SmoothObjective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

// One accepted step, reported to the optional observer.
struct InnerStep {
  int iteration = 0;
  double value = 0.0;
  double new_value = 0.0;
  double directional_derivative = 0.0;  // <grad f(x), d>
  double step = 0.0;
  bool steepest_descent = false;
  // Accepted on the gradient-based decrease estimate rather than on values.
  bool approximate_armijo = false;
};

using InnerObserver = std::function<void(const InnerStep&)>;

// Limited-memory BFGS (two-loop recursion) with Armijo backtracking. Falls
// back to steepest descent when the quasi-Newton direction is not a descent
// direction or its line search fails. Once value differences are within
// rounding noise, the Armijo test is applied to the trapezoid estimate of
// the decrease (approximate Armijo, as in Hager-Zhang). Deterministic. Throws NumericalError
// if f or its gradient is not finite at x0.
InnerResult MinimizeLbfgs(const SmoothObjective& objective,
                          const Eigen::VectorXd& x0, const InnerConfig& config,
                          const InnerObserver& observer = {});

}  // namespace symcone
