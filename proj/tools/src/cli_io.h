#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "symcone/algebra.h"
#include "symcone/auglag.h"
#include "symcone/kkt.h"
#include "symcone/problem.h"

namespace symcone::cli {

using nlohmann::json;

// Bad input from the user: unreadable files, malformed numbers, wrong
// sizes. Maps to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kNotConverged = 2,
  kBadInput = 3,
};

// "1, 2.5 -3" or "[1, 2.5, -3]".
std::vector<double> ParseNumberList(const std::string& text);

// Element from natural coordinates (Spin unscaled, SymMat lower triangle by
// columns with plain off-diagonal entries).
AlgebraElement ParseElement(const AlgebraDescriptor& algebra,
                            const std::string& text);

json VectorJson(const Eigen::VectorXd& v);
json ElementJson(const AlgebraElement& e);

// {"x": [...], "mu": [...], "lambda": [...], "y": [...]} with lambda and y
// in natural coordinates; "mu" may be omitted when m == 0 and "y" is
// optional.
KKTPoint ReadPoint(const std::string& path, const ConeProblem& p);
json PointJson(const KKTPoint& point);

json ResidualJson(const KKTResidualReport& r);
json SolveReportJson(const ConeProblem& p, const SolveReport& r);

// Algorithm comparison, one row per report.
std::string ComparisonTable(const std::vector<SolveReport>& reports);

void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace symcone::cli
