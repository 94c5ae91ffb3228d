#include "symcone/jacobi_eigen.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "symcone/errors.h"

namespace symcone {

namespace {

double OffDiagonalNorm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = j + 1; i < a.rows(); ++i) s += 2.0 * a(i, j) * a(i, j);
  }
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen JacobiEigen(const Eigen::MatrixXd& input,
                           const JacobiOptions& options) {
  const int n = static_cast<int>(input.rows());
  if (input.cols() != n) {
    throw NumericalError("JacobiEigen needs a square matrix");
  }
  Eigen::MatrixXd a = input.triangularView<Eigen::Lower>();
  a.triangularView<Eigen::StrictlyUpper>() = a.transpose();
  if (!a.allFinite()) {
    throw NumericalError("JacobiEigen: non-finite matrix entry");
  }
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = a.norm();
  const double threshold = options.relative_threshold * scale;
  int sweep = 0;
  double off = OffDiagonalNorm(a);
  double previous_off = std::numeric_limits<double>::infinity();
  while (off > threshold &&
         !(off <= options.stagnation_threshold * scale && off >= 0.5 * previous_off)) {
    if (sweep == options.max_sweeps) {
      throw NumericalError("JacobiEigen: no convergence after " +
                           std::to_string(options.max_sweeps) + " sweeps");
    }
    ++sweep;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p, q) (Golub & Van Loan 8.5.2).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    previous_off = off;
    off = OffDiagonalNorm(a);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace symcone
