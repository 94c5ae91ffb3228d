#include "symcone/inner_solver.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <string>
#include <vector>

#include "symcone/errors.h"

namespace symcone {

namespace {

struct CurvaturePair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

Eigen::VectorXd TwoLoop(const std::deque<CurvaturePair>& pairs,
                        const Eigen::VectorXd& grad) {
  Eigen::VectorXd q = grad;
  std::vector<double> alpha(pairs.size());
  for (int i = static_cast<int>(pairs.size()) - 1; i >= 0; --i) {
    alpha[i] = pairs[i].rho * pairs[i].s.dot(q);
    q -= alpha[i] * pairs[i].y;
  }
  const CurvaturePair& last = pairs.back();
  q *= last.s.dot(last.y) / last.y.squaredNorm();
  for (size_t i = 0; i < pairs.size(); ++i) {
    const double beta = pairs[i].rho * pairs[i].y.dot(q);
    q += (alpha[i] - beta) * pairs[i].s;
  }
  return -q;
}

struct LineSearchResult {
  bool accepted = false;
  bool approximate = false;
  double step = 0.0;
  double value = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd grad;
};

LineSearchResult Backtrack(const SmoothObjective& objective,
                           const Eigen::VectorXd& x, double fx,
                           const Eigen::VectorXd& d, double slope,
                           const InnerConfig& cfg) {
  LineSearchResult out;
  out.grad.resize(x.size());
  double step = cfg.initial_step;
  for (int k = 0; k <= cfg.max_backtracks; ++k, step *= cfg.shrink) {
    out.x = x + step * d;
    const double value = objective(out.x, &out.grad);
    if (!std::isfinite(value) || !out.grad.allFinite()) continue;
    if (value <= fx + cfg.armijo_c1 * step * slope) {
      out.accepted = true;
      out.step = step;
      out.value = value;
      return out;
    }
    // Near a minimizer the decrease drops below the resolution of f. The
    // trapezoid estimate step/2 (slope + slope_new) of f(x + step d) - f(x)
    // is then far more accurate than the difference of computed values.
    const double noise = cfg.value_noise * (1.0 + std::abs(fx));
    if (value <= fx + noise &&
        0.5 * step * (slope + out.grad.dot(d)) <=
            cfg.armijo_c1 * step * slope) {
      out.accepted = true;
      out.approximate = true;
      out.step = step;
      out.value = value;
      return out;
    }
  }
  return out;
}

}  // namespace

void InnerConfig::Validate() const {
  if (!(grad_tolerance > 0.0) || max_iterations < 0 || memory < 1 ||
      !(armijo_c1 > 0.0 && armijo_c1 < 1.0) ||
      !(shrink > 0.0 && shrink < 1.0) || !(initial_step > 0.0) ||
      max_backtracks < 1 || !(value_noise >= 0.0)) {
    throw StructuralError("invalid inner solver configuration");
  }
}

std::string ToString(InnerStatus s) {
  switch (s) {
    case InnerStatus::kConverged:
      return "converged";
    case InnerStatus::kMaxIterations:
      return "max_iter";
    case InnerStatus::kLineSearchFailure:
      return "line_search_failure";
  }
  return {};
}

InnerResult MinimizeLbfgs(const SmoothObjective& objective,
                          const Eigen::VectorXd& x0, const InnerConfig& config,
                          const InnerObserver& observer) {
  config.Validate();
  InnerResult result;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd grad(x.size());
  double fx = objective(x, &grad);
  if (!std::isfinite(fx) || !grad.allFinite()) {
    std::ostringstream msg;
    msg << "objective not finite at start point [" << x.transpose() << "]";
    throw NumericalError(msg.str());
  }

  std::deque<CurvaturePair> pairs;
  int it = 0;
  result.status = InnerStatus::kMaxIterations;
  while (true) {
    if (grad.norm() <= config.grad_tolerance) {
      result.status = InnerStatus::kConverged;
      break;
    }
    if (it == config.max_iterations) break;

    bool steepest = pairs.empty();
    Eigen::VectorXd d;
    if (!steepest) {
      d = TwoLoop(pairs, grad);
      if (!(grad.dot(d) < 0.0) || !d.allFinite()) steepest = true;
    }
    if (steepest) {
      pairs.clear();
      d = -grad / std::max(1.0, grad.norm());
    }
    LineSearchResult ls = Backtrack(objective, x, fx, d, grad.dot(d), config);
    if (!ls.accepted && !steepest) {
      pairs.clear();
      steepest = true;
      d = -grad / std::max(1.0, grad.norm());
      ls = Backtrack(objective, x, fx, d, grad.dot(d), config);
    }
    if (!ls.accepted) {
      result.status = InnerStatus::kLineSearchFailure;
      break;
    }
    ++it;
    if (observer) {
      observer(InnerStep{it, fx, ls.value, grad.dot(d), ls.step, steepest,
                         ls.approximate});
    }

    CurvaturePair pair{ls.x - x, ls.grad - grad, 0.0};
    const double sy = pair.s.dot(pair.y);
    // Keep the inverse Hessian approximation positive definite.
    if (sy > 1e-12 * pair.s.norm() * pair.y.norm() && sy > 0.0) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (static_cast<int>(pairs.size()) > config.memory) pairs.pop_front();
    }
    x = std::move(ls.x);
    grad = std::move(ls.grad);
    fx = ls.value;
  }
  result.minimizer = std::move(x);
  result.value = fx;
  result.grad_norm = grad.norm();
  result.iterations = it;
  return result;
}

}  // namespace symcone
