#pragma once

#include <Eigen/Dense>

namespace symcone {

struct SymmetricEigen {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, orthonormal
  int sweeps = 0;
};

struct JacobiOptions {
  int max_sweeps = 100;
  // Stop once the off-diagonal Frobenius norm is at most
  // relative_threshold * ||A||_F, or once a sweep below
  // stagnation_threshold * ||A||_F stops shrinking it (rounding floor).
  double relative_threshold = 1e-15;
  double stagnation_threshold = 1e-12;
};

// Cyclic Jacobi rotations for a dense symmetric matrix. Only the lower
// triangle is read. Throws NumericalError if the sweep cap is hit.
SymmetricEigen JacobiEigen(const Eigen::MatrixXd& a,
                           const JacobiOptions& options = {});

}  // namespace symcone
