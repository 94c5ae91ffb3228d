#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "symcone/algebra.h"

namespace symcone {

// minimize f(x) subject to h(x) = 0, g(x) in K, with K the cone of squares
// of `algebra`. Jacobians act on stored algebra coordinates, so Dg^T is the
// adjoint of Dg.
struct ConeProblem {
  std::string name;
  int n = 0;
  int m = 0;
  AlgebraDescriptor algebra = AlgebraDescriptor::Orthant(1);

  std::function<double(const Eigen::VectorXd&)> f;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad_f;
  // m-vector and m x n Jacobian; may be empty when m == 0.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> h;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_h;
  std::function<AlgebraElement(const Eigen::VectorXd&)> g;
  // dim(E) x n.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac_g;

  // Optional second derivatives. When any is missing the Lagrangian Hessian
  // falls back to central differences of its gradient.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hess_f;
  // sum_i mu_i * Hess h_i(x).
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>
      hess_h_weighted;
  // sum_j lambda_j * Hess g_j(x) over stored coordinates j.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const AlgebraElement&)>
      hess_g_weighted;

  Eigen::VectorXd EvalH(const Eigen::VectorXd& x) const {
    return m == 0 || !h ? Eigen::VectorXd::Zero(m) : h(x);
  }
  Eigen::MatrixXd EvalJacH(const Eigen::VectorXd& x) const {
    return m == 0 || !jac_h ? Eigen::MatrixXd::Zero(m, n) : jac_h(x);
  }
  bool HasHessians() const {
    return hess_f && hess_g_weighted && (m == 0 || hess_h_weighted);
  }
};

}  // namespace symcone
