#include "cli_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace symcone::cli {

std::vector<double> ParseNumberList(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',' || c == '[' || c == ']' || c == ';') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(value)) {
      throw InputError("not a finite number: '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

AlgebraElement ParseElement(const AlgebraDescriptor& algebra,
                            const std::string& text) {
  const std::vector<double> values = ParseNumberList(text);
  if (static_cast<int>(values.size()) != algebra.dim()) {
    throw InputError(algebra.ToString() + " needs " +
                     std::to_string(algebra.dim()) + " coordinates, got " +
                     std::to_string(values.size()));
  }
  return AlgebraElement::FromNatural(algebra, values);
}

json VectorJson(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json ElementJson(const AlgebraElement& e) { return VectorJson(e.ToNatural()); }

namespace {

Eigen::VectorXd ReadVector(const json& doc, const char* key, int size,
                           bool optional_when_empty) {
  if (!doc.contains(key)) {
    if (optional_when_empty && size == 0) return Eigen::VectorXd(0);
    throw InputError(std::string("point file lacks \"") + key + "\"");
  }
  const json& arr = doc.at(key);
  if (!arr.is_array() || static_cast<int>(arr.size()) != size) {
    throw InputError(std::string("\"") + key + "\" must be an array of " +
                     std::to_string(size) + " numbers");
  }
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) {
    if (!arr[i].is_number()) {
      throw InputError(std::string("\"") + key + "\" holds a non-number");
    }
    v[i] = arr[i].get<double>();
  }
  return v;
}

AlgebraElement NaturalElement(const AlgebraDescriptor& algebra,
                              const Eigen::VectorXd& natural) {
  return AlgebraElement::FromNatural(
      algebra, std::span<const double>(natural.data(), natural.size()));
}

}  // namespace

KKTPoint ReadPoint(const std::string& path, const ConeProblem& p) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read point file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("point file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError("point file must hold an object");
  const int dim = p.algebra.dim();
  KKTPoint point{ReadVector(doc, "x", p.n, false),
                 ReadVector(doc, "mu", p.m, true),
                 NaturalElement(p.algebra, ReadVector(doc, "lambda", dim, false)),
                 std::nullopt};
  if (doc.contains("y") && !doc.at("y").is_null()) {
    point.y = NaturalElement(p.algebra, ReadVector(doc, "y", dim, false));
  }
  return point;
}

json PointJson(const KKTPoint& point) {
  json out = {{"x", VectorJson(point.x)},
              {"mu", VectorJson(point.mu)},
              {"lambda", ElementJson(point.lambda)}};
  if (point.y) out["y"] = ElementJson(*point.y);
  return out;
}

json ResidualJson(const KKTResidualReport& r) {
  json out = {{"stationarity", r.stationarity},
              {"primal_eq", r.primal_eq},
              {"cone_primal", r.cone_primal},
              {"cone_dual", r.cone_dual},
              {"complementarity", r.complementarity},
              {"max_residual", r.max_residual},
              {"dominant", r.Dominant()}};
  if (r.slack_form) out["slack_residual"] = r.slack_residual;
  return out;
}

json SolveReportJson(const ConeProblem& p, const SolveReport& r) {
  json out = {{"problem", p.name},
              {"algorithm", r.algorithm},
              {"status", ToString(r.status)},
              {"outer_iterations", r.outer_iterations},
              {"inner_iterations", r.total_inner_iterations},
              {"inner_dimension", r.inner_dimension},
              {"seconds", r.seconds},
              {"f", p.f(r.x)},
              {"kkt", ResidualJson(r.final_residual)},
              {"x", VectorJson(r.x)},
              {"mu", VectorJson(r.mu)},
              {"lambda", ElementJson(*r.lambda)},
              {"warnings", r.warnings}};
  if (r.y) out["y"] = ElementJson(*r.y);
  return out;
}

std::string ComparisonTable(const std::vector<SolveReport>& reports) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %-14s %6s %7s %10s %11s\n",
                "algorithm", "status", "outer", "inner", "time[s]", "kkt");
  out << line;
  for (const SolveReport& r : reports) {
    std::snprintf(line, sizeof(line), "%-16s %-14s %6d %7d %10.4f %11.3e\n",
                  r.algorithm.c_str(), ToString(r.status).c_str(),
                  r.outer_iterations, r.total_inner_iterations, r.seconds,
                  r.final_residual.max_residual);
    out << line;
  }
  return out.str();
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
  if (!out) throw InputError("failed writing " + path);
}

}  // namespace symcone::cli
