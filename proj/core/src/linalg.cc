#include "symcone/linalg.h"

#include <limits>

#include "symcone/jacobi_eigen.h"

namespace symcone {

Eigen::MatrixXd NullSpace(const Eigen::MatrixXd& a,
                          double relative_tolerance) {
  const int cols = static_cast<int>(a.cols());
  if (cols == 0) return Eigen::MatrixXd(0, 0);
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = relative_tolerance * (s.size() > 0 ? s[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

double MinSingularValue(const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return std::numeric_limits<double>::infinity();
  if (a.cols() > a.rows()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()[a.cols() - 1];
}

double MaxSingularValue(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()[0];
}

double MinSymmetricEigenvalue(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return std::numeric_limits<double>::infinity();
  return JacobiEigen(a).eigenvalues[0];
}

}  // namespace symcone
