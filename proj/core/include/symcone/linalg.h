#pragma once

#include <Eigen/Dense>

namespace symcone {

// Orthonormal basis (columns) of ker A. Singular values at or below
// relative_tolerance * sigma_max count as zero; a zero matrix has a full
// kernel.
Eigen::MatrixXd NullSpace(const Eigen::MatrixXd& a,
                          double relative_tolerance = 1e-8);

// Smallest singular value of A viewed as a map on R^{cols}; zero when
// cols > rows and +infinity when cols == 0.
double MinSingularValue(const Eigen::MatrixXd& a);
double MaxSingularValue(const Eigen::MatrixXd& a);

// Smallest eigenvalue of a symmetric matrix; +infinity for an empty one.
double MinSymmetricEigenvalue(const Eigen::MatrixXd& a);

}  // namespace symcone
