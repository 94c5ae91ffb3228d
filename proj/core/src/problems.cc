#include "symcone/problems.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>

#include "symcone/errors.h"
#include "symcone/kkt.h"
#include "symcone/second_order.h"
#include "symcone/spectral.h"

namespace symcone {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Columns are the stored coordinates of a random Jordan frame, one per
// eigenvalue slot, so that F * sigma has eigenvalues sigma.
Eigen::MatrixXd RandomFrame(Rng& rng, const AlgebraDescriptor& algebra) {
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(algebra.dim(), algebra.rank());
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    const Block& blk = algebra.block(b);
    const int off = algebra.offset(b);
    const int slot = algebra.rank_offset(b);
    switch (blk.kind) {
      case BlockKind::kOrthant: {
        std::vector<int> perm(blk.n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = blk.n - 1; i > 0; --i) {
          std::swap(perm[i], perm[rng.UniformInt(0, i)]);
        }
        for (int i = 0; i < blk.n; ++i) frame(off + perm[i], slot + i) = 1.0;
        break;
      }
      case BlockKind::kSpin: {
        const Eigen::VectorXd u = rng.UnitVector(blk.n - 1);
        frame(off, slot) = kInvSqrt2;
        frame(off, slot + 1) = kInvSqrt2;
        frame.block(off + 1, slot, blk.n - 1, 1) = -kInvSqrt2 * u;
        frame.block(off + 1, slot + 1, blk.n - 1, 1) = kInvSqrt2 * u;
        break;
      }
      case BlockKind::kSymMat: {
        const Eigen::MatrixXd q =
            rng.NormalMatrix(blk.n, blk.n).householderQr().householderQ();
        for (int i = 0; i < blk.n; ++i) {
          frame.block(off, slot + i, blk.dim(), 1) =
              SymMatToSvec(q.col(i) * q.col(i).transpose());
        }
        break;
      }
    }
  }
  return frame;
}

struct PlantData {
  Eigen::VectorXd x_star;
  Eigen::VectorXd z_star;  // g(x*)
  Eigen::MatrixXd a;       // Dg(x*)
  Eigen::MatrixXd bend_g;  // column j scales (x_j - x*_j)^2 in g
  Eigen::MatrixXd c;       // Dh(x*)
  Eigen::MatrixXd bend_h;
  Eigen::MatrixXd p;
  Eigen::VectorXd b;
  double quartic = 0.0;
};

ConeProblem MakePlantedProblem(std::string name,
                               const AlgebraDescriptor& algebra, int n, int m,
                               std::shared_ptr<const PlantData> data) {
  ConeProblem p;
  p.name = std::move(name);
  p.n = n;
  p.m = m;
  p.algebra = algebra;
  p.f = [data](const Eigen::VectorXd& x) {
    const Eigen::VectorXd d = x - data->x_star;
    return data->b.dot(d) + 0.5 * d.dot(data->p * d) +
           data->quartic * d.array().pow(4).sum();
  };
  p.grad_f = [data](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const Eigen::VectorXd d = x - data->x_star;
    return data->b + data->p * d +
           (4.0 * data->quartic * d.array().cube()).matrix();
  };
  p.hess_f = [data](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    const Eigen::VectorXd d = x - data->x_star;
    Eigen::MatrixXd hess = data->p;
    hess.diagonal() += (12.0 * data->quartic * d.array().square()).matrix();
    return hess;
  };
  p.h = [data](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const Eigen::VectorXd d = x - data->x_star;
    return data->c * d + data->bend_h * d.cwiseAbs2();
  };
  p.jac_h = [data](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    const Eigen::VectorXd d = x - data->x_star;
    return data->c + 2.0 * data->bend_h * d.asDiagonal();
  };
  p.hess_h_weighted = [data](const Eigen::VectorXd&,
                             const Eigen::VectorXd& mu) -> Eigen::MatrixXd {
    return (2.0 * data->bend_h.transpose() * mu).asDiagonal();
  };
  p.g = [data, algebra](const Eigen::VectorXd& x) {
    const Eigen::VectorXd d = x - data->x_star;
    return AlgebraElement(algebra, data->z_star + data->a * d +
                                       data->bend_g * d.cwiseAbs2());
  };
  p.jac_g = [data](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    const Eigen::VectorXd d = x - data->x_star;
    return data->a + 2.0 * data->bend_g * d.asDiagonal();
  };
  p.hess_g_weighted = [data](const Eigen::VectorXd&,
                             const AlgebraElement& lambda) -> Eigen::MatrixXd {
    return (2.0 * data->bend_g.transpose() * lambda.coords()).asDiagonal();
  };
  return p;
}

void CheckKnownSolution(const ProblemEntry& entry, double tolerance) {
  const KnownSolution& s = *entry.known;
  const KKTResidualReport r =
      KktResidualP1(entry.problem, KKTPoint{s.x, s.mu, s.lambda, std::nullopt});
  if (!(r.max_residual <= tolerance)) {
    throw NumericalError("known solution of " + entry.problem.name +
                         " has KKT residual " + std::to_string(r.max_residual) +
                         " (" + r.Dominant() + ")");
  }
}

}  // namespace

bool IsStrictlyComplementary(const AlgebraDescriptor& algebra,
                             const RankProfile& profile) {
  if (static_cast<int>(profile.size()) != algebra.num_blocks()) return false;
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    if (profile[b].rank_g + profile[b].rank_lambda != algebra.block(b).rank()) {
      return false;
    }
  }
  return true;
}

AlgebraElement RandomSpectralElement(Rng& rng, const AlgebraDescriptor& algebra,
                                     const Eigen::VectorXd& eigenvalues) {
  if (eigenvalues.size() != algebra.rank()) {
    throw StructuralError("expected " + std::to_string(algebra.rank()) +
                          " eigenvalues for " + algebra.ToString());
  }
  return AlgebraElement(algebra, RandomFrame(rng, algebra) * eigenvalues);
}

ProblemEntry PlantInstance(std::uint64_t seed, const AlgebraDescriptor& algebra,
                           int n, int m, const RankProfile& profile,
                           const PlantOptions& options) {
  if (n < 1 || m < 0 || m >= n) {
    throw StructuralError("planted instance needs 0 <= m < n");
  }
  if (static_cast<int>(profile.size()) != algebra.num_blocks()) {
    throw StructuralError("rank profile has " + std::to_string(profile.size()) +
                          " entries for " + algebra.ToString());
  }
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    const BlockRanks& br = profile[b];
    if (br.rank_g < 0 || br.rank_lambda < 0 ||
        br.rank_g + br.rank_lambda > algebra.block(b).rank()) {
      throw StructuralError("infeasible rank profile (" +
                            std::to_string(br.rank_g) + ", " +
                            std::to_string(br.rank_lambda) + ") for block " +
                            algebra.block(b).ToString());
    }
  }

  Rng rng(seed);
  const int dim = algebra.dim();
  const Eigen::MatrixXd frame = RandomFrame(rng, algebra);
  Eigen::VectorXd sigma_g = Eigen::VectorXd::Zero(algebra.rank());
  Eigen::VectorXd sigma_lambda = Eigen::VectorXd::Zero(algebra.rank());
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    const int slot = algebra.rank_offset(b);
    for (int i = 0; i < profile[b].rank_g; ++i) {
      sigma_g[slot + i] = rng.Uniform(0.5, 2.0);
    }
    for (int i = 0; i < profile[b].rank_lambda; ++i) {
      sigma_lambda[slot + profile[b].rank_g + i] = rng.Uniform(0.5, 2.0);
    }
  }

  auto data = std::make_shared<PlantData>();
  data->x_star = rng.NormalVector(n);
  data->z_star = frame * sigma_g;
  const AlgebraElement lambda_star(algebra, frame * sigma_lambda);
  const Eigen::VectorXd mu_star = rng.NormalVector(m);
  data->a = rng.NormalMatrix(dim, n);
  data->bend_g = options.g_curvature * rng.NormalMatrix(dim, n);
  data->c = rng.NormalMatrix(m, n);
  data->bend_h = options.h_curvature * rng.NormalMatrix(m, n);
  data->quartic = options.quartic;
  data->b = data->c.transpose() * mu_star +
            data->a.transpose() * lambda_star.coords();

  // Constraint curvature at x* enters the Lagrangian Hessian as
  // -2 diag(bend_h^T mu* + bend_g^T lambda*); shift P past it.
  const Eigen::VectorXd bend = 2.0 * (data->bend_h.transpose() * mu_star +
                                      data->bend_g.transpose() *
                                          lambda_star.coords());
  const Eigen::MatrixXd r = rng.NormalMatrix(n, n);
  data->p = r * r.transpose() / n;
  data->p.diagonal().array() += 1.0 + bend.cwiseAbs().maxCoeff();

  const std::string name = "planted_" + algebra.ToString() + "_s" +
                           std::to_string(seed);
  ProblemEntry entry;
  entry.problem = MakePlantedProblem(name, algebra, n, m, data);
  entry.description = "planted instance over " + algebra.ToString() +
                      (IsStrictlyComplementary(algebra, profile)
                           ? ", strictly complementary"
                           : ", not strictly complementary");
  entry.known = KnownSolution{data->x_star, mu_star, lambda_star, 0.0,
                              "planted"};
  entry.start = data->x_star + options.start_radius * rng.UnitVector(n);

  if (options.saddle) {
    // Push the reduced form to -1 along the critical direction whose
    // x-part is largest.
    const AlgebraElement y =
        SqrtElement(AlgebraElement(algebra, data->z_star));
    const Eigen::MatrixXd basis =
        CriticalSubspaceBasis(entry.problem, data->x_star, y);
    int best = -1;
    double best_norm = 1e-6;
    for (int j = 0; j < basis.cols(); ++j) {
      const double norm = basis.col(j).head(n).norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = j;
      }
    }
    if (best < 0) {
      throw StructuralError("no critical direction moves x; cannot plant a "
                            "saddle with n = " + std::to_string(n));
    }
    const Eigen::VectorXd z = basis.col(best);
    const Eigen::MatrixXd form = SecondOrderFormMatrix(
        entry.problem, data->x_star, mu_star, lambda_star);
    const double q = z.dot(form * z);
    const Eigen::VectorXd v = z.head(n);
    data->p -= (q + 1.0) / std::pow(v.squaredNorm(), 2) * v * v.transpose();
    entry.description += ", saddle";
  }

  CheckKnownSolution(entry, 1e-10);
  return entry;
}

ProblemEntry Hs1Nlp() {
  ConeProblem p;
  p.name = "hs1";
  p.n = 2;
  p.m = 0;
  p.algebra = AlgebraDescriptor::Orthant(1);
  p.f = [](const Eigen::VectorXd& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  p.grad_f = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const double t = x[1] - x[0] * x[0];
    return Eigen::Vector2d(-400.0 * x[0] * t - 2.0 * (1.0 - x[0]), 200.0 * t);
  };
  p.hess_f = [](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    Eigen::Matrix2d hess;
    hess << 1200.0 * x[0] * x[0] - 400.0 * x[1] + 2.0, -400.0 * x[0],
        -400.0 * x[0], 200.0;
    return hess;
  };
  const AlgebraDescriptor algebra = p.algebra;
  p.g = [algebra](const Eigen::VectorXd& x) {
    return AlgebraElement(algebra, Eigen::VectorXd::Constant(1, x[1] + 1.5));
  };
  p.jac_g = [](const Eigen::VectorXd&) -> Eigen::MatrixXd {
    return Eigen::RowVector2d(0.0, 1.0);
  };
  p.hess_g_weighted = [](const Eigen::VectorXd&,
                         const AlgebraElement&) -> Eigen::MatrixXd {
    return Eigen::Matrix2d::Zero();
  };

  ProblemEntry entry;
  entry.problem = std::move(p);
  entry.description =
      "Rosenbrock valley with the bound x2 >= -1.5 (Hock-Schittkowski #1)";
  entry.known = KnownSolution{Eigen::Vector2d(1.0, 1.0), Eigen::VectorXd(0),
                              AlgebraElement::Zero(algebra), 0.0, "analytic"};
  entry.start = Eigen::Vector2d(-2.0, 1.0);
  return entry;
}

ProblemEntry NsocpDesk() {
  ProblemEntry entry =
      PlantInstance(20240101, AlgebraDescriptor::Spin(3), 3, 1, {{1, 1}});
  entry.problem.name = "nsocp_desk";
  entry.description =
      "planted second-order cone instance: Spin(3), n = 3, one equality";
  return entry;
}

ProblemEntry NsdpDesk() {
  PlantOptions options;
  options.g_curvature = 0.0;
  ProblemEntry entry = PlantInstance(20240202, AlgebraDescriptor::SymMat(3), 4,
                                     1, {{2, 1}}, options);
  entry.problem.name = "nsdp_desk";
  entry.description =
      "planted semidefinite instance: affine g into SymMat(3), n = 4, one "
      "equality";
  return entry;
}

std::vector<std::string> RegisteredProblems() {
  return {"hs1", "nsocp_desk", "nsdp_desk"};
}

ProblemEntry LoadProblem(const std::string& name) {
  ProblemEntry entry;
  if (name == "hs1") {
    entry = Hs1Nlp();
  } else if (name == "nsocp_desk") {
    entry = NsocpDesk();
  } else if (name == "nsdp_desk") {
    entry = NsdpDesk();
  } else {
    throw StructuralError("unknown problem '" + name + "'");
  }
  CheckKnownSolution(entry, 1e-8);
  return entry;
}

}  // namespace symcone
