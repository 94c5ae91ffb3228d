#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "symcone/algebra.h"

namespace symcone {

inline constexpr double kDefaultRankTolerance = 1e-8;

// a = sum_i eigenvalues[i] * frame[i], with frame a Jordan frame. Eigenvalues
// are block-concatenated in descriptor order; within a block they ascend.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  std::vector<AlgebraElement> frame;
  double rank_tolerance = kDefaultRankTolerance;

  // Eigenvalue slots i with |sigma_i| > rank_tolerance * max(1, max|sigma|).
  std::vector<bool> NonzeroMask() const;
  int Rank() const;
  AlgebraElement Reconstruct() const;
  // sum_i fn(sigma_i) c_i.
  AlgebraElement Apply(const std::function<double(double)>& fn) const;
  // Sum of the frame members selected by `mask`.
  AlgebraElement Idempotent(const std::vector<bool>& mask) const;
  int BlockOf(int slot) const;
};

SpectralDecomposition SpectralDecompose(
    const AlgebraElement& a, double rank_tolerance = kDefaultRankTolerance);

Eigen::VectorXd Eigenvalues(const AlgebraElement& a);
double Trace(const AlgebraElement& a);
int Rank(const AlgebraElement& a,
         double rank_tolerance = kDefaultRankTolerance);
double MinEigenvalue(const AlgebraElement& a);

// Unique square root in the cone. Eigenvalues down to
// -rank_tolerance * max(1, max|sigma|) are clamped to zero; anything more
// negative throws DomainError.
AlgebraElement SqrtElement(const AlgebraElement& a,
                           double rank_tolerance = kDefaultRankTolerance);

// sum_i sqrt(|sigma_i|) c_i.
AlgebraElement SqrtAbsElement(const AlgebraElement& a);

// Orthonormal coordinate bases (as matrix columns) of the Peirce spaces
// V(c, 1), V(c, 1/2), V(c, 0) of an idempotent c.
struct PeirceBasis {
  AlgebraElement idempotent;
  Eigen::MatrixXd one;
  Eigen::MatrixXd half;
  Eigen::MatrixXd zero;
};

// Throws PreconditionError if ||c o c - c|| > 1e-8 and NumericalError if an
// eigenvalue of L_c is not within 1e-6 of {0, 1/2, 1}.
PeirceBasis ComputePeirceBasis(const AlgebraElement& c);

// Sum of the frame idempotents attached to the eigenvalues of z that are
// positive beyond the rank tolerance.
AlgebraElement SupportIdempotent(
    const AlgebraElement& z, double rank_tolerance = kDefaultRankTolerance);

}  // namespace symcone
