// symcone: solve the registered conic test problems and check candidate
// points from the command line.
//
//   symcone solve --problem hs1 --algorithm both
//   symcone check-kkt --problem nsdp_desk --point point.json
//   symcone decompose --algebra spin:3 --element 1,0.5,0
//
// Log verbosity comes from SYMCONE_LOG_LEVEL (trace, debug, info, warn,
// error, off; default warn). Logs go to stderr, reports to stdout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "cli_io.h"
#include "commands.h"
#include "symcone/errors.h"

namespace {

using symcone::cli::CheckArgs;
using symcone::cli::RunConfig;

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("symcone");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SYMCONE_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

void AddCheckOptions(CLI::App* cmd, CheckArgs* args) {
  cmd->add_option("--problem", args->problem, "Registered problem name")
      ->required();
  cmd->add_option("--point", args->point_path,
                  "JSON file with x, mu, lambda and optionally y")
      ->required();
  cmd->add_option("--tolerance", args->tolerance,
                  "KKT tolerance for the check")
      ->capture_default_str();
}

// Applies `key = value` lines (flat or under [solve]) to options that were
// not given on the command line, so flags > file > defaults.
void ApplyConfigFile(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw symcone::cli::InputError("cannot read config " + path);
  for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section marks
    if (!item.parents.empty() &&
        !(item.parents.size() == 1 && item.parents[0] == cmd->get_name())) {
      throw symcone::cli::InputError("unexpected section in " + path + ": " +
                                     item.fullname());
    }
    CLI::Option* opt = cmd->get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") {
      throw symcone::cli::InputError("unknown key in " + path + ": " +
                                     item.name);
    }
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Augmented Lagrangian solvers and checks for symmetric cone "
               "programs"};
  app.require_subcommand(1);

  RunConfig run;
  symcone::AuglagConfig& cfg = run.auglag;
  std::string rho0_mode = "scaled";
  CLI::App* solve = app.add_subcommand("solve", "Solve a registered problem");
  std::string config_path;
  solve->add_option("--config", config_path,
                    "TOML file of flag = value lines (flags win over it)");
  // Not required here: the config file may name the problem.
  solve->add_option("--problem", run.problem, "Registered problem name");
  solve->add_option("--algorithm", run.algorithm,
                    "alg1_slack, alg2_projection or both")
      ->capture_default_str();
  solve->add_option("--csv", run.csv_path,
                    "Iteration log; 'both' adds .alg1/.alg2 before the "
                    "extension");
  solve->add_option("--json", run.json_path, "JSON summary file");
  solve->add_option("--rho0-mode", rho0_mode, "scaled or fixed")
      ->capture_default_str();
  solve->add_option("--rho0", cfg.rho0, "Initial penalty in fixed mode")
      ->capture_default_str();
  solve->add_option("--rho-growth", cfg.rho_growth, "Penalty growth factor")
      ->capture_default_str();
  solve->add_option("--infeasibility-factor", cfg.infeasibility_factor,
                    "Required infeasibility decrease per outer iteration")
      ->capture_default_str();
  solve->add_option("--rho-max", cfg.rho_max, "Penalty cap")
      ->capture_default_str();
  solve->add_option("--kkt-tolerance", cfg.kkt_tolerance,
                    "Outer stopping tolerance")
      ->capture_default_str();
  solve->add_option("--max-outer", cfg.max_outer, "Outer iteration limit")
      ->capture_default_str();
  solve->add_option("--multiplier-cap", cfg.multiplier_cap,
                    "Norm bound on mu and lambda")
      ->capture_default_str();
  solve->add_option("--inner-tolerance", cfg.inner.grad_tolerance,
                    "Subproblem gradient tolerance")
      ->capture_default_str();
  solve->add_option("--inner-max-iter", cfg.inner.max_iterations,
                    "Subproblem iteration limit")
      ->capture_default_str();
  solve->add_option("--memory", cfg.inner.memory, "L-BFGS history length")
      ->capture_default_str();

  CheckArgs check;
  CLI::App* check_kkt =
      app.add_subcommand("check-kkt", "KKT residuals at a candidate point");
  AddCheckOptions(check_kkt, &check);
  CLI::App* check_sosc = app.add_subcommand(
      "check-sosc", "Second-order sufficient condition at a KKT point");
  AddCheckOptions(check_sosc, &check);
  CLI::App* check_cq = app.add_subcommand(
      "check-cq", "Nondegeneracy, slack LICQ and MFCQ at a point");
  AddCheckOptions(check_cq, &check);

  std::string algebra, element, lambda, y;
  CLI::App* check_membership = app.add_subcommand(
      "check-membership", "Is lambda in the cone (optionally via a y with "
                          "y o lambda = 0)");
  check_membership->add_option("--algebra", algebra, "e.g. orthant:2+spin:3")
      ->required();
  check_membership->add_option("--lambda", lambda, "Natural coordinates")
      ->required();
  check_membership->add_option("--y", y, "Natural coordinates");
  CLI::App* project =
      app.add_subcommand("project", "Euclidean projection onto the cone");
  CLI::App* decompose =
      app.add_subcommand("decompose", "Spectral decomposition");
  for (CLI::App* cmd : {project, decompose}) {
    cmd->add_option("--algebra", algebra, "e.g. symmat:3")->required();
    cmd->add_option("--element", element, "Natural coordinates")->required();
  }
  CLI::App* list = app.add_subcommand("list-problems",
                                      "Registered problems as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : symcone::cli::kBadInput;
  }

  try {
    if (*solve && !config_path.empty()) {
      try {
        ApplyConfigFile(solve, config_path);
      } catch (const CLI::Error& e) {
        throw symcone::cli::InputError("config " + config_path + ": " +
                                       e.what());
      }
    }
    if (rho0_mode == "fixed") {
      cfg.rho0_mode = symcone::PenaltyStart::kFixed;
    } else if (rho0_mode != "scaled") {
      throw symcone::cli::InputError("--rho0-mode must be scaled or fixed");
    }
    std::ostream& out = std::cout;
    if (*solve) return symcone::cli::CmdSolve(run, out);
    if (*check_kkt) return symcone::cli::CmdCheckKkt(check, out);
    if (*check_sosc) return symcone::cli::CmdCheckSosc(check, out);
    if (*check_cq) return symcone::cli::CmdCheckCq(check, out);
    if (*check_membership) {
      return symcone::cli::CmdCheckMembership(algebra, lambda, y, out);
    }
    if (*project) return symcone::cli::CmdProject(algebra, element, out);
    if (*decompose) return symcone::cli::CmdDecompose(algebra, element, out);
    if (*list) return symcone::cli::CmdListProblems(out);
  } catch (const symcone::cli::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return symcone::cli::kBadInput;
  } catch (const symcone::StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return symcone::cli::kBadInput;
  } catch (const symcone::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return symcone::cli::kNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return symcone::cli::kCheckFailed;
  }
  return symcone::cli::kBadInput;
}
