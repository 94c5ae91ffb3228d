#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "symcone/auglag.h"
#include "symcone/cone.h"
#include "symcone/inner_solver.h"
#include "symcone/problems.h"
#include "symcone/rng.h"
#include "symcone/spectral.h"

namespace symcone {
namespace {

const std::vector<std::string> kAlgebras = {"orthant:8", "spin:8", "symmat:4", "symmat:8",
                                            "orthant:2+spin:3+symmat:3"};

AlgebraElement Sample(const std::string& spec, std::uint64_t seed) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(spec);
  Rng rng(seed);
  return AlgebraElement(d, rng.NormalVector(d.dim()));
}

void BM_SpectralDecompose(benchmark::State& state) {
  const AlgebraElement a = Sample(kAlgebras[state.range(0)], 1);
  state.SetLabel(kAlgebras[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(SpectralDecompose(a));
}
BENCHMARK(BM_SpectralDecompose)->DenseRange(0, 4);

void BM_Project(benchmark::State& state) {
  const AlgebraElement a = Sample(kAlgebras[state.range(0)], 2);
  state.SetLabel(kAlgebras[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(Project(a));
}
BENCHMARK(BM_Project)->DenseRange(0, 4);

// One inner solve of the projection augmented Lagrangian from the start point.
void BM_InnerSolve(benchmark::State& state) {
  const ProblemEntry e = LoadProblem(RegisteredProblems()[state.range(0)]);
  const ConeProblem& p = e.problem;
  const Eigen::VectorXd mu = Eigen::VectorXd::Zero(p.m);
  const AlgebraElement lambda = AlgebraElement::Zero(p.algebra);
  const SmoothObjective obj = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
    AuglagValue v = EvalAuglagSym(p, x, mu, lambda, 10.0);
    *g = std::move(v.gradient);
    return v.value;
  };
  state.SetLabel(p.name);
  for (auto _ : state) benchmark::DoNotOptimize(MinimizeLbfgs(obj, e.start, InnerConfig{}));
}
BENCHMARK(BM_InnerSolve)->DenseRange(0, 2);

void BM_Solve(benchmark::State& state) {
  const ProblemEntry e = LoadProblem(RegisteredProblems()[state.range(0)]);
  const ConeProblem& p = e.problem;
  const Eigen::VectorXd mu = Eigen::VectorXd::Zero(p.m);
  const AlgebraElement lambda = AlgebraElement::Zero(p.algebra);
  const bool slack = state.range(1) == 1;
  state.SetLabel(p.name + (slack ? " alg1_slack" : " alg2_projection"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(slack ? SolveAlgorithm1(p, AuglagConfig{}, e.start, mu, lambda)
                                   : SolveAlgorithm2(p, AuglagConfig{}, e.start, mu, lambda));
  }
}
BENCHMARK(BM_Solve)->ArgsProduct({{0, 1, 2}, {1, 2}})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace symcone

BENCHMARK_MAIN();
