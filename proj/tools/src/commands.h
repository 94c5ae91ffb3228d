#pragma once

#include <ostream>
#include <string>

#include "symcone/auglag.h"

namespace symcone::cli {

struct RunConfig {
  std::string problem;
  // alg1_slack, alg2_projection or both.
  std::string algorithm = "both";
  AuglagConfig auglag;
  std::string csv_path;
  std::string json_path;
};

struct CheckArgs {
  std::string problem;
  std::string point_path;
  double tolerance = 1e-4;
};

// Each returns a process exit code (see ExitCode) and throws InputError or
// StructuralError for unusable input.
int CmdSolve(const RunConfig& run, std::ostream& out);
int CmdCheckKkt(const CheckArgs& args, std::ostream& out);
int CmdCheckSosc(const CheckArgs& args, std::ostream& out);
int CmdCheckCq(const CheckArgs& args, std::ostream& out);
// Without y: eigenvalue test. With y: the kernel criterion.
int CmdCheckMembership(const std::string& algebra, const std::string& lambda,
                       const std::string& y, std::ostream& out);
int CmdProject(const std::string& algebra, const std::string& element,
               std::ostream& out);
int CmdDecompose(const std::string& algebra, const std::string& element,
                 std::ostream& out);
int CmdListProblems(std::ostream& out);

}  // namespace symcone::cli
