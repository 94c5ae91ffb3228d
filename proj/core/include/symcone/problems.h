#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symcone/algebra.h"
#include "symcone/problem.h"
#include "symcone/rng.h"

namespace symcone {

struct KnownSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd mu;
  AlgebraElement lambda;
  double f = 0.0;
  // How the solution is known: "analytic" or "planted".
  std::string origin;
};

struct ProblemEntry {
  ConeProblem problem;
  std::string description;
  std::optional<KnownSolution> known;
  Eigen::VectorXd start;
};

// Eigenvalue slots used by g(x*) and by lambda* in one block; the remaining
// slots are zero in both.
struct BlockRanks {
  int rank_g = 0;
  int rank_lambda = 0;
};
using RankProfile = std::vector<BlockRanks>;

// rank g + rank lambda == block rank in every block.
bool IsStrictlyComplementary(const AlgebraDescriptor& algebra,
                             const RankProfile& profile);

struct PlantOptions {
  // Scale of the quadratic terms of g and h around x*. Zero gives affine
  // constraints.
  double g_curvature = 0.05;
  double h_curvature = 0.05;
  // Coefficient of sum_j (x_j - x*_j)^4 in f.
  double quartic = 0.01;
  // Bend f along a critical direction so that x* is a KKT point at which
  // the second-order conditions fail.
  bool saddle = false;
  // Distance of the default start point from x*.
  double start_radius = 0.5;
};

// Instance with a known KKT triple (x*, mu*, lambda*) and f* = 0, built
// backwards: a random Jordan frame per block carries g(x*) and lambda* on
// disjoint eigenvalue slots, Dg and Dh are random, and grad f(x*) is set
// to Dh^T mu* + Dg^T lambda*. Unless `saddle`, the Hessian of the
// Lagrangian is positive definite at x*. Deterministic in `seed`.
// Throws StructuralError on an infeasible rank profile or bad sizes.
ProblemEntry PlantInstance(std::uint64_t seed, const AlgebraDescriptor& algebra,
                           int n, int m, const RankProfile& profile,
                           const PlantOptions& options = {});

// Element sum_i eigenvalues[i] c_i over a random Jordan frame; eigenvalues
// are indexed by eigenvalue slot (algebra rank many).
AlgebraElement RandomSpectralElement(Rng& rng, const AlgebraDescriptor& algebra,
                                     const Eigen::VectorXd& eigenvalues);

// Hock-Schittkowski problem 1 with its bound written as x2 + 1.5 in R_+.
ProblemEntry Hs1Nlp();
// Planted Spin(3) instance, n = 3, m = 1.
ProblemEntry NsocpDesk();
// Planted SymMat(3) instance with affine g, n = 4, m = 1.
ProblemEntry NsdpDesk();

std::vector<std::string> RegisteredProblems();

// Builds the named problem and checks that its known solution satisfies the
// KKT conditions to 1e-8. Throws StructuralError for an unknown name and
// NumericalError if the self-check fails.
ProblemEntry LoadProblem(const std::string& name);

}  // namespace symcone
