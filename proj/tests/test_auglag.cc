#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symcone/auglag.h"
#include "symcone/cone.h"
#include "symcone/errors.h"
#include "symcone/problems.h"
#include "test_util.h"

namespace symcone {
namespace {

struct Draw {
  Eigen::VectorXd x;
  Eigen::VectorXd mu;
  AlgebraElement lambda;
  double rho;
};

Draw RandomDraw(Rng& rng, const ProblemEntry& e) {
  const ConeProblem& p = e.problem;
  return Draw{e.start + rng.NormalVector(p.n), rng.NormalVector(p.m),
              AlgebraElement(p.algebra, rng.NormalVector(p.algebra.dim())),
              std::pow(10.0, rng.Uniform(-1.0, 3.0))};
}

AlgebraElement Zero(const ConeProblem& p) { return AlgebraElement::Zero(p.algebra); }

TEST(AuglagSlackTest, FeasibleSlackLeavesObjective) {
  Rng rng(71);
  for (const std::string& name : RegisteredProblems()) {
    const ProblemEntry e = LoadProblem(name);
    const ConeProblem& p = e.problem;
    const Eigen::VectorXd& x = e.known->x;
    const AlgebraElement y = SqrtElement(p.g(x));
    const Draw d = RandomDraw(rng, e);
    const double v1 = EvalAuglagSlack(p, x, y, d.mu, d.lambda, d.rho).value;
    const double v2 = EvalAuglagSlack(p, x, y, d.mu, d.lambda, 2.0 * d.rho).value;
    EXPECT_NEAR(v1, p.f(x), 1e-12 * (1 + std::abs(p.f(x)))) << name;
    EXPECT_NEAR(v1, v2, 1e-12 * (1 + std::abs(v1))) << name;
  }
}

TEST(AuglagSlackTest, GradientMatchesFiniteDifferences) {
  Rng rng(72);
  for (const std::string& name : RegisteredProblems()) {
    const ProblemEntry e = LoadProblem(name);
    const ConeProblem& p = e.problem;
    const int n = p.n;
    const int dim = p.algebra.dim();
    for (int t = 0; t < 10; ++t) {
      const Draw d = RandomDraw(rng, e);
      Eigen::VectorXd z(n + dim);
      z << d.x, rng.NormalVector(dim);
      auto value = [&](const Eigen::VectorXd& q) {
        return EvalAuglagSlack(p, q.head(n), AlgebraElement(p.algebra, q.tail(dim)), d.mu,
                               d.lambda, d.rho)
            .value;
      };
      const Eigen::VectorXd got =
          EvalAuglagSlack(p, d.x, AlgebraElement(p.algebra, z.tail(dim)), d.mu, d.lambda,
                          d.rho)
              .gradient;
      const Eigen::VectorXd fd = testing::FdGradient(value, z);
      EXPECT_LE((got - fd).norm(), 1e-5 * (1 + got.norm())) << name;
    }
  }
}

TEST(AuglagSymTest, NoMultiplierAndFeasibleConeTermVanishes) {
  const ProblemEntry e = LoadProblem("nsdp_desk");
  const ConeProblem& p = e.problem;
  const Eigen::VectorXd& x = e.known->x;
  ASSERT_LE(DistanceToCone(p.g(x)), 1e-12);
  const Eigen::VectorXd mu = Eigen::VectorXd::Ones(p.m);
  const double rho = 3.0;
  const Eigen::VectorXd hx = p.EvalH(x);
  EXPECT_NEAR(EvalAuglagSym(p, x, mu, Zero(p), rho).value,
              p.f(x) - hx.dot(mu) + 0.5 * rho * hx.squaredNorm(), 1e-12);
}

TEST(AuglagSymTest, GradientMatchesFiniteDifferencesAwayFromKinks) {
  Rng rng(73);
  for (const std::string& name : RegisteredProblems()) {
    const ProblemEntry e = LoadProblem(name);
    const ConeProblem& p = e.problem;
    int tested = 0;
    for (int t = 0; t < 20 && tested < 10; ++t) {
      const Draw d = RandomDraw(rng, e);
      const Eigen::VectorXd sigma = Eigenvalues(d.lambda - d.rho * p.g(d.x));
      if (sigma.cwiseAbs().minCoeff() < 1e-3) continue;
      ++tested;
      const Eigen::VectorXd got = EvalAuglagSym(p, d.x, d.mu, d.lambda, d.rho).gradient;
      const Eigen::VectorXd fd = testing::FdGradient(
          [&](const Eigen::VectorXd& q) {
            return EvalAuglagSym(p, q, d.mu, d.lambda, d.rho).value;
          },
          d.x);
      EXPECT_LE((got - fd).norm(), 1e-5 * (1 + got.norm())) << name;
    }
    EXPECT_GT(tested, 0) << name;
  }
}

TEST(ArgminYTest, Examples) {
  const AlgebraDescriptor d = AlgebraDescriptor::Spin(3);
  const AlgebraElement g = AlgebraElement::FromNatural(d, {2.0, 1.0, 0.5});
  EXPECT_LE((ArgminYSlack(g, AlgebraElement::Zero(d), 5.0) - SqrtElement(g)).norm(), 1e-14);
  // g - lambda / rho in -K.
  EXPECT_LE(ArgminYSlack(-1.0 * g, g, 1.0).norm(), 1e-15);
}

TEST(ArgminYTest, SquaresToProjection) {
  Rng rng(74);
  for (const AlgebraDescriptor& d : testing::PropertyFamilies()) {
    for (int t = 0; t < 100; ++t) {
      const AlgebraElement g = testing::RandomElement(rng, d);
      const AlgebraElement lambda = testing::RandomElement(rng, d);
      const double rho = std::pow(10.0, rng.Uniform(-1.0, 3.0));
      const AlgebraElement y = ArgminYSlack(g, lambda, rho);
      const AlgebraElement target = Project(g - (1.0 / rho) * lambda);
      EXPECT_LE((JordanProduct(y, y) - target).norm(), 1e-8 * (1 + target.norm()));
    }
  }
}

TEST(PartialMinimizationTest, SlackAtArgminEqualsProjectionForm) {
  Rng rng(75);
  for (const std::string& name : RegisteredProblems()) {
    const ProblemEntry e = LoadProblem(name);
    const ConeProblem& p = e.problem;
    for (int t = 0; t < 100; ++t) {
      const Draw d = RandomDraw(rng, e);
      const AlgebraElement y = ArgminYSlack(p.g(d.x), d.lambda, d.rho);
      const double slack = EvalAuglagSlack(p, d.x, y, d.mu, d.lambda, d.rho).value;
      const double sym = EvalAuglagSym(p, d.x, d.mu, d.lambda, d.rho).value;
      EXPECT_LE(std::abs(slack - sym), 1e-8 * (1 + std::abs(sym))) << name;
      // Any other y does no better.
      const AlgebraElement other = y + 0.1 * testing::RandomElement(rng, p.algebra);
      EXPECT_GE(EvalAuglagSlack(p, d.x, other, d.mu, d.lambda, d.rho).value,
                slack - 1e-9 * (1 + std::abs(slack)));
    }
  }
}

TEST(PartialMinimizationTest, MultiplierUpdatesCoincide) {
  Rng rng(76);
  for (const AlgebraDescriptor& d : testing::PropertyFamilies()) {
    for (int t = 0; t < 100; ++t) {
      const AlgebraElement g = testing::RandomElement(rng, d);
      const AlgebraElement lambda = testing::RandomElement(rng, d);
      const double rho = std::pow(10.0, rng.Uniform(-1.0, 2.0));
      const AlgebraElement y = ArgminYSlack(g, lambda, rho);
      const AlgebraElement slack_update = lambda - rho * (g - JordanProduct(y, y));
      EXPECT_LE((slack_update - Project(lambda - rho * g)).norm(),
                1e-10 * (1 + rho) * (1 + lambda.norm() + g.norm()));
    }
  }
}

TEST(PenaltyTest, UpdateRule) {
  AuglagConfig cfg;
  EXPECT_EQ(UpdatePenalty(10.0, std::nullopt, 5.0, cfg), 10.0);
  EXPECT_EQ(UpdatePenalty(10.0, 1.0, 0.5, cfg), 10.0);   // halved
  EXPECT_EQ(UpdatePenalty(10.0, 1.0, 0.9, cfg), 100.0);  // stagnant
  EXPECT_EQ(UpdatePenalty(5e7, 1.0, 1.0, cfg), 1e8);     // capped
  EXPECT_EQ(UpdatePenalty(1e8, 1.0, 1.0, cfg), 1e8);
}

TEST(PenaltyTest, InitialPenaltyScalesWithObjective) {
  const ProblemEntry e = Hs1Nlp();
  AuglagConfig cfg;
  // f(-2, 1) = 100 * 9 + 9 = 909, feasible start.
  EXPECT_NEAR(InitialPenalty(e.problem, e.start, cfg), 9090.0, 1e-9);
  cfg.rho0_mode = PenaltyStart::kFixed;
  cfg.rho0 = 3.5;
  EXPECT_EQ(InitialPenalty(e.problem, e.start, cfg), 3.5);
  cfg.rho0_mode = PenaltyStart::kScaledByProblem;
  EXPECT_EQ(InitialPenalty(e.problem, Eigen::Vector2d(1.0, 1.0), cfg), 1.0);
}

TEST(AuglagConfigTest, RejectsInvalidSettings) {
  AuglagConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.rho_growth = 1.0;
  EXPECT_THROW(cfg.Validate(), StructuralError);
  cfg = AuglagConfig{};
  cfg.infeasibility_factor = 1.0;
  EXPECT_THROW(cfg.Validate(), StructuralError);
  cfg = AuglagConfig{};
  cfg.max_outer = 0;
  EXPECT_THROW(cfg.Validate(), StructuralError);
  cfg = AuglagConfig{};
  cfg.inner.memory = 0;
  EXPECT_THROW(cfg.Validate(), StructuralError);
}

class SolverTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SolverTest, BothAlgorithmsConverge) {
  const ProblemEntry e = LoadProblem(GetParam());
  const ConeProblem& p = e.problem;
  const AuglagConfig cfg;
  const SolveReport a1 = SolveAlgorithm1(p, cfg, e.start, Eigen::VectorXd::Zero(p.m), Zero(p));
  const SolveReport a2 = SolveAlgorithm2(p, cfg, e.start, Eigen::VectorXd::Zero(p.m), Zero(p));
  for (const SolveReport* r : {&a1, &a2}) {
    EXPECT_EQ(r->status, SolveStatus::kConverged) << r->algorithm;
    EXPECT_LE(r->final_residual.max_residual, 1e-4) << r->algorithm;
    EXPECT_EQ(static_cast<int>(r->log.size()), r->outer_iterations);
    EXPECT_EQ(static_cast<int>(r->x_history.size()), r->outer_iterations + 1);
    int inner = 0;
    for (size_t k = 0; k < r->log.size(); ++k) {
      inner += r->log[k].inner_iters;
      if (k > 0) EXPECT_GE(r->log[k].rho, r->log[k - 1].rho);
    }
    EXPECT_EQ(inner, r->total_inner_iterations);
  }
  EXPECT_EQ(a1.algorithm, "alg1_slack");
  EXPECT_EQ(a2.algorithm, "alg2_projection");
  EXPECT_EQ(a1.inner_dimension, p.n + p.algebra.dim());
  EXPECT_EQ(a2.inner_dimension, p.n);
  ASSERT_TRUE(a1.y.has_value());
  EXPECT_FALSE(a2.y.has_value());
  EXPECT_LE(DistanceToCone(*a2.lambda), 1e-12);
}

TEST_P(SolverTest, OptimalStartStopsAfterOneOuterIteration) {
  const ProblemEntry e = LoadProblem(GetParam());
  const KnownSolution& s = *e.known;
  const AuglagConfig cfg;
  const SolveReport a1 = SolveAlgorithm1(e.problem, cfg, s.x, s.mu, s.lambda,
                                         SqrtElement(e.problem.g(s.x)));
  const SolveReport a2 = SolveAlgorithm2(e.problem, cfg, s.x, s.mu, s.lambda);
  EXPECT_EQ(a1.outer_iterations, 1);
  EXPECT_EQ(a2.outer_iterations, 1);
  EXPECT_EQ(a1.status, SolveStatus::kConverged);
  EXPECT_EQ(a2.status, SolveStatus::kConverged);
}

TEST_P(SolverTest, IterateSequencesAgreeUnderTightInnerTolerance) {
  const ProblemEntry e = LoadProblem(GetParam());
  const ConeProblem& p = e.problem;
  AuglagConfig cfg;
  cfg.inner.grad_tolerance = 1e-10;
  const SolveReport a1 = SolveAlgorithm1(p, cfg, e.start, Eigen::VectorXd::Zero(p.m), Zero(p));
  const SolveReport a2 = SolveAlgorithm2(p, cfg, e.start, Eigen::VectorXd::Zero(p.m), Zero(p));
  ASSERT_EQ(a1.outer_iterations, a2.outer_iterations);
  for (size_t k = 0; k < a1.x_history.size(); ++k) {
    EXPECT_LE((a1.x_history[k] - a2.x_history[k]).norm(), 1e-6) << "k = " << k;
  }
}

INSTANTIATE_TEST_SUITE_P(Desk, SolverTest,
                         ::testing::Values("hs1", "nsocp_desk", "nsdp_desk"));

TEST(SolverTest, PlantedNsdpRecoversMinimizer) {
  const ProblemEntry e =
      PlantInstance(81, AlgebraDescriptor::SymMat(3), 6, 1, {{2, 1}});
  const ConeProblem& p = e.problem;
  AuglagConfig cfg;
  cfg.kkt_tolerance = 1e-8;
  for (int alg = 1; alg <= 2; ++alg) {
    const SolveReport r =
        alg == 1 ? SolveAlgorithm1(p, cfg, e.start, Eigen::VectorXd::Zero(p.m), Zero(p))
                 : SolveAlgorithm2(p, cfg, e.start, Eigen::VectorXd::Zero(p.m), Zero(p));
    EXPECT_EQ(r.status, SolveStatus::kConverged) << alg;
    EXPECT_LE((r.x - e.known->x).norm(), 1e-5) << alg;
  }
}

TEST(SolverTest, RejectsMismatchedStart) {
  const ProblemEntry e = NsocpDesk();
  EXPECT_THROW(SolveAlgorithm2(e.problem, AuglagConfig{}, Eigen::VectorXd::Zero(1),
                               Eigen::VectorXd::Zero(e.problem.m), Zero(e.problem)),
               StructuralError);
}

TEST(IterationCsvTest, HeaderAndOneRowPerOuterIteration) {
  const ProblemEntry e = Hs1Nlp();
  const SolveReport r = SolveAlgorithm2(e.problem, AuglagConfig{}, e.start,
                                        Eigen::VectorXd::Zero(0), Zero(e.problem));
  std::ostringstream out;
  WriteIterationCsv(r, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,inner_iters,rho,infeas_h,infeas_cone,compl,kkt_residual,f");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
  }
  EXPECT_EQ(rows, r.outer_iterations);
}

TEST(IterationCsvTest, RepeatedRunsAreByteIdentical) {
  const ProblemEntry e = NsdpDesk();
  const ConeProblem& p = e.problem;
  std::ostringstream a, b;
  WriteIterationCsv(SolveAlgorithm1(p, AuglagConfig{}, e.start, Eigen::VectorXd::Zero(p.m), Zero(p)), a);
  WriteIterationCsv(SolveAlgorithm1(p, AuglagConfig{}, e.start, Eigen::VectorXd::Zero(p.m), Zero(p)), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(SolveStatusTest, Names) {
  EXPECT_EQ(ToString(SolveStatus::kConverged), "converged");
  EXPECT_EQ(ToString(SolveStatus::kMaxOuter), "max_outer");
  EXPECT_EQ(ToString(SolveStatus::kInnerFailure), "inner_failure");
}

}  // namespace
}  // namespace symcone
