#include "commands.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <spdlog/spdlog.h>

#include "cli_io.h"
#include "symcone/cone.h"
#include "symcone/errors.h"
#include "symcone/problems.h"
#include "symcone/second_order.h"
#include "symcone/spectral.h"

namespace symcone::cli {

namespace {

// JSON has no infinity; report it as null.
json Finite(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string SuffixedPath(const std::string& path, const std::string& tag) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "." + tag;
  }
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

SolveReport RunOne(const ProblemEntry& entry, const AuglagConfig& config,
                   const std::string& algorithm) {
  const ConeProblem& p = entry.problem;
  const Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(p.m);
  const AlgebraElement lambda1 = AlgebraElement::Zero(p.algebra);
  std::ostringstream start;
  start << entry.start.transpose();
  spdlog::info("{}: {} from x1 = [{}]", p.name, algorithm, start.str());
  SolveReport r = algorithm == "alg1_slack"
                      ? SolveAlgorithm1(p, config, entry.start, mu1, lambda1)
                      : SolveAlgorithm2(p, config, entry.start, mu1, lambda1);
  for (const IterationLog& row : r.log) {
    spdlog::debug("{} k={} inner={} rho={:.3g} kkt={:.3e}", r.algorithm, row.k,
                  row.inner_iters, row.rho, row.kkt_residual);
  }
  for (const std::string& w : r.warnings) spdlog::warn("{}: {}", r.algorithm, w);
  spdlog::info("{}: {} after {} outer / {} inner iterations, kkt {:.3e}",
               r.algorithm, ToString(r.status), r.outer_iterations,
               r.total_inner_iterations, r.final_residual.max_residual);
  return r;
}

struct LoadedCheck {
  ProblemEntry entry;
  KKTPoint point;
};

LoadedCheck LoadCheck(const CheckArgs& args) {
  ProblemEntry entry = LoadProblem(args.problem);
  KKTPoint point = ReadPoint(args.point_path, entry.problem);
  return {std::move(entry), std::move(point)};
}

}  // namespace

int CmdSolve(const RunConfig& run, std::ostream& out) {
  if (run.problem.empty()) throw InputError("no problem given (--problem)");
  if (run.algorithm != "alg1_slack" && run.algorithm != "alg2_projection" &&
      run.algorithm != "both") {
    throw InputError("unknown algorithm '" + run.algorithm +
                     "' (expected alg1_slack, alg2_projection or both)");
  }
  run.auglag.Validate();
  const ProblemEntry entry = LoadProblem(run.problem);

  std::vector<std::string> algorithms;
  if (run.algorithm == "both") {
    algorithms = {"alg1_slack", "alg2_projection"};
  } else {
    algorithms = {run.algorithm};
  }
  std::vector<SolveReport> reports;
  for (const std::string& a : algorithms) {
    reports.push_back(RunOne(entry, run.auglag, a));
  }

  const bool both = reports.size() > 1;
  if (!run.csv_path.empty()) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      std::ostringstream csv;
      WriteIterationCsv(reports[i], csv);
      const std::string tag = i == 0 ? "alg1" : "alg2";
      WriteTextFile(both ? SuffixedPath(run.csv_path, tag) : run.csv_path,
                    csv.str());
    }
  }
  json summary;
  if (both) {
    summary = {{"problem", entry.problem.name}, {"runs", json::array()}};
    for (const SolveReport& r : reports) {
      summary["runs"].push_back(SolveReportJson(entry.problem, r));
    }
    out << ComparisonTable(reports);
  } else {
    summary = SolveReportJson(entry.problem, reports.front());
    out << summary.dump(2) << "\n";
  }
  if (!run.json_path.empty()) WriteTextFile(run.json_path, summary.dump(2) + "\n");

  for (const SolveReport& r : reports) {
    if (r.status != SolveStatus::kConverged) return kNotConverged;
  }
  return kOk;
}

int CmdCheckKkt(const CheckArgs& args, std::ostream& out) {
  const LoadedCheck c = LoadCheck(args);
  const KKTResidualReport r1 = KktResidualP1(c.entry.problem, c.point);
  bool pass = r1.max_residual <= args.tolerance;
  json report = {{"problem", c.entry.problem.name},
                 {"tolerance", args.tolerance},
                 {"residuals", ResidualJson(r1)}};
  if (c.point.y) {
    const KKTResidualReport r2 = KktResidualP2(c.entry.problem, c.point);
    report["slack_residuals"] = ResidualJson(r2);
    pass = pass && r2.max_residual <= args.tolerance;
  }
  report["pass"] = pass;
  if (!pass) report["dominant"] = r1.Dominant();
  out << report.dump(2) << "\n";
  return pass ? kOk : kCheckFailed;
}

int CmdCheckSosc(const CheckArgs& args, std::ostream& out) {
  const LoadedCheck c = LoadCheck(args);
  SecondOrderOptions options;
  options.kkt_tolerance = args.tolerance;
  json report = {{"problem", c.entry.problem.name}};
  try {
    const SecondOrderReport r =
        c.point.y ? CheckSoscSlack(c.entry.problem, c.point, options)
                  : CheckSoncNscp(c.entry.problem, c.point, options);
    report["form"] = c.point.y ? "slack" : "conic";
    report["verdict"] = ToString(r.verdict);
    report["subspace_dim"] = r.subspace_dim;
    report["min_eigenvalue"] = Finite(r.min_eigenvalue);
    report["vacuous"] = r.vacuous;
    report["strict_complementarity_implied"] = r.strict_complementarity_implied;
    report["membership_cross_check"] = r.membership_cross_check;
    if (!c.point.y) report["nondegenerate"] = r.nondegenerate;
    out << report.dump(2) << "\n";
    return r.verdict == SecondOrderVerdict::kSoscHolds ? kOk : kCheckFailed;
  } catch (const PreconditionError& e) {
    report["error"] = e.what();
  } catch (const DomainError& e) {
    report["error"] = e.what();
  }
  out << report.dump(2) << "\n";
  return kCheckFailed;
}

int CmdCheckCq(const CheckArgs& args, std::ostream& out) {
  const LoadedCheck c = LoadCheck(args);
  const ConeProblem& p = c.entry.problem;
  json report = {{"problem", p.name}};
  const AlgebraElement gx = p.g(c.point.x);
  const double min_eig = MinEigenvalue(gx);
  report["g_min_eigenvalue"] = min_eig;
  bool nondegenerate = false;
  try {
    const CqReport nd = CheckNondegeneracy(p, c.point.x);
    const CqReport licq = CheckLicqSlack(p, c.point.x, SqrtElement(gx));
    nondegenerate = nd.holds;
    report["nondegeneracy"] = {{"holds", nd.holds},
                               {"min_singular_value", nd.min_singular_value},
                               {"unknowns", nd.unknowns}};
    report["licq_slack"] = {{"holds", licq.holds},
                            {"min_singular_value", licq.min_singular_value},
                            {"unknowns", licq.unknowns}};
  } catch (const DomainError& e) {
    report["error"] = e.what();
  }
  const MfcqReport mfcq = CheckMfcq(p, c.point.x);
  report["mfcq"] = {{"confirmed", mfcq.confirmed},
                    {"jac_h_surjective", mfcq.jac_h_surjective},
                    {"best_min_eigenvalue", mfcq.best_min_eigenvalue}};
  out << report.dump(2) << "\n";
  return nondegenerate ? kOk : kCheckFailed;
}

int CmdCheckMembership(const std::string& algebra, const std::string& lambda,
                       const std::string& y, std::ostream& out) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(algebra);
  const AlgebraElement l = ParseElement(d, lambda);
  const SpectralDecomposition sd = SpectralDecompose(l);
  json report = {{"algebra", d.ToString()},
                 {"eigenvalues", VectorJson(sd.eigenvalues)},
                 {"rank", sd.Rank()},
                 {"algebra_rank", d.rank()}};
  bool in_cone = false;
  if (y.empty()) {
    const double scale = std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
    in_cone = sd.eigenvalues.minCoeff() >= -kDefaultRankTolerance * scale;
    report["method"] = "eigenvalues";
  } else {
    const AlgebraElement yy = ParseElement(d, y);
    try {
      const MembershipCertificate cert = MembershipCriterion(l, yy);
      in_cone = cert.in_cone;
      report["method"] = "kernel_criterion";
      report["rank_of_y"] = cert.rank_of_y;
      report["kernel_dim"] = cert.kernel_dim;
      report["min_restricted_eigenvalue"] =
          Finite(cert.min_restricted_eigenvalue);
      report["strictly_complementary"] =
          cert.in_cone && cert.rank_of_lambda + cert.rank_of_y == d.rank();
    } catch (const PreconditionError& e) {
      throw InputError(e.what());
    }
  }
  report["in_cone"] = in_cone;
  out << report.dump(2) << "\n";
  return in_cone ? kOk : kCheckFailed;
}

int CmdProject(const std::string& algebra, const std::string& element,
               std::ostream& out) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(algebra);
  const AlgebraElement v = ParseElement(d, element);
  const AlgebraElement plus = Project(v);
  const json report = {{"algebra", d.ToString()},
                       {"projection", ElementJson(plus)},
                       {"negative_part", ElementJson(plus - v)},
                       {"distance", (v - plus).norm()},
                       {"moreau_residual", MoreauResidual(v)}};
  out << report.dump(2) << "\n";
  return kOk;
}

int CmdDecompose(const std::string& algebra, const std::string& element,
                 std::ostream& out) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(algebra);
  const AlgebraElement v = ParseElement(d, element);
  const SpectralDecomposition sd = SpectralDecompose(v);
  json frame = json::array();
  json blocks = json::array();
  for (std::size_t i = 0; i < sd.frame.size(); ++i) {
    frame.push_back(ElementJson(sd.frame[i]));
    blocks.push_back(sd.BlockOf(static_cast<int>(i)));
  }
  const json report = {{"algebra", d.ToString()},
                       {"eigenvalues", VectorJson(sd.eigenvalues)},
                       {"frame", frame},
                       {"block_of", blocks},
                       {"rank", sd.Rank()},
                       {"trace", Trace(v)},
                       {"reconstruction_error", (sd.Reconstruct() - v).norm()}};
  out << report.dump(2) << "\n";
  return kOk;
}

int CmdListProblems(std::ostream& out) {
  json list = json::array();
  for (const std::string& name : RegisteredProblems()) {
    const ProblemEntry e = LoadProblem(name);
    json item = {{"name", name},
                 {"description", e.description},
                 {"algebra", e.problem.algebra.ToString()},
                 {"n", e.problem.n},
                 {"m", e.problem.m},
                 {"start", VectorJson(e.start)}};
    if (e.known) {
      item["known_solution"] = {{"x", VectorJson(e.known->x)},
                                {"mu", VectorJson(e.known->mu)},
                                {"lambda", ElementJson(e.known->lambda)},
                                {"f", e.known->f},
                                {"origin", e.known->origin}};
    }
    list.push_back(item);
  }
  out << list.dump(2) << "\n";
  return kOk;
}

}  // namespace symcone::cli
