// ltivp: solve linear constant-coefficient ODE initial value problems whose
// input switches at t = 0.
//
//   ltivp solve    problem.json [--csv out.csv] [--horizon T] [--grid N]
//   ltivp map-ic   problem.json
//   ltivp realize  problem.json
//   ltivp check    problem.json
//   ltivp simulate problem.json [--csv out.csv] [--horizon T] [--grid N]
//
// Any subcommand accepts --echo to print the canonical form of the parsed
// problem file instead of running. LTIVP_TOL overrides the equality
// thresholds (transfer-function match and continuity).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ltivp/format.hpp"
#include "ltivp/ic.hpp"
#include "ltivp/laplace.hpp"
#include "ltivp/problem_io.hpp"
#include "ltivp/realization.hpp"
#include "ltivp/simulate.hpp"

namespace {

using namespace ltivp;

struct Options {
  std::string file;
  std::optional<std::string> csv;
  std::optional<double> horizon;
  std::optional<int> grid;
  bool echo = false;
};

struct Tolerances {
  double transfer = 1e-9;
  double continuity = kContinuityTol;
};

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("LTIVP_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) throw ParseError("LTIVP_TOL", "expected a positive number");
    tol.transfer = v;
    tol.continuity = v;
  }
  return tol;
}

ProblemFile load(const Options& opt) {
  std::ifstream in(opt.file);
  if (!in) throw ParseError(opt.file, "cannot open problem file");
  std::stringstream ss;
  ss << in.rdbuf();
  ProblemFile pf = parse_problem(ss.str());
  if (opt.horizon) {
    if (!(*opt.horizon > 0.0)) throw ParseError("--horizon", "must be positive");
    pf.horizon = *opt.horizon;
    pf.problem.horizon = *opt.horizon;
  }
  if (opt.grid) {
    if (*opt.grid < 1) throw ParseError("--grid", "must be a positive integer");
    pf.grid = *opt.grid;
    pf.problem.grid_points = *opt.grid;
  }
  return pf;
}

std::string derivative_name(int k) {
  if (k == 0) return "y";
  if (k <= 3) return "y" + std::string(static_cast<std::size_t>(k), '\'');
  return "y^(" + std::to_string(k) + ")";
}

/// States of the canonical realization reconstructed from the closed-form
/// output stack, x(t) = O^-1 (Y(t) - M U(t)).
Trajectory closed_form_trajectory(const IVProblem& p, const Signal& y, const std::vector<double>& grid) {
  const int n = p.ode.order();
  const StateSpace ss = observable_canonical(p.ode);
  std::vector<Signal> yd{y};
  std::vector<Signal> ud{p.input.future};
  for (int k = 1; k < n; ++k) {
    yd.push_back(yd.back().derivative());
    ud.push_back(ud.back().derivative());
  }
  Trajectory traj;
  traj.times = grid;
  traj.states.resize(static_cast<Eigen::Index>(grid.size()), n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Eigen::VectorXd ys(n);
    Eigen::VectorXd us(n);
    for (int k = 0; k < n; ++k) {
      ys(n - 1 - k) = yd[static_cast<std::size_t>(k)](grid[i]);
      us(n - 1 - k) = ud[static_cast<std::size_t>(k)](grid[i]);
    }
    traj.states.row(static_cast<Eigen::Index>(i)) =
        recover_state(ss, ConditionStack(ys), ConditionStack(us)).transpose();
    traj.outputs.push_back(ys(n - 1));
  }
  return traj;
}

void write_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("--csv", "cannot write " + path);
  write_csv(out, traj);
}

int cmd_solve(const Options& opt) {
  const ProblemFile pf = load(opt);
  const IVProblem& p = pf.problem;
  const ConditionPair pair = condition_pair(p);
  std::cout << "conditions: " << (p.kind == ConditionKind::previous ? "previous" : "first") << "\n";
  if (p.kind == ConditionKind::previous) {
    std::cout << "Y(0-) = " << format_vector(pair.y_prev.values()) << "\n";
    std::cout << "U(0-) = " << format_vector(pair.u_prev.values()) << "\n";
  }
  std::cout << "U(0+) = " << format_vector(pair.u_first.values()) << "\n";
  std::cout << "Y(0+) = " << format_vector(pair.y_first->values()) << "\n";
  const LaplaceSolution sol = solve_laplace(p);
  std::cout << "U(s) = " << to_string(laplace_transform(p.input.future)) << "\n";
  std::cout << "Y(s) = " << to_string(sol.Ys) << "\n";
  std::cout << "  zero-state part = " << to_string(sol.zero_state_part) << "\n";
  std::cout << "  zero-input part = " << to_string(sol.zero_input_part) << "\n";
  const Signal y = invert(sol.Ys, sol.poles);
  std::cout << "y(t) = " << to_string(y) << "   (t > 0)\n";
  if (pf.horizon) {
    const std::string path = opt.csv ? *opt.csv : std::filesystem::path(opt.file).replace_extension(".csv").string();
    const std::vector<double> grid = uniform_grid(*pf.horizon, p.grid_points);
    write_trajectory(closed_form_trajectory(p, y, grid), path);
    std::cout << "trajectory: " << grid.size() << " points over (0, " << detail::format_number(*pf.horizon)
              << "] written to " << path << "\n";
  }
  return 0;
}

int cmd_map_ic(const Options& opt) {
  const ProblemFile pf = load(opt);
  const IVProblem& p = pf.problem;
  const int n = p.ode.order();
  const Eigen::MatrixXd M = markov_matrix(p.ode);
  const ConditionStack u_first = condition_stack(p.input.future, n);
  const ConditionStack u_prev = condition_stack(p.input.past, n);
  const ConditionStack du = u_first - u_prev;
  ConditionStack y_prev;
  ConditionStack y_first;
  if (p.kind == ConditionKind::previous) {
    y_prev = p.y;
    y_first = map_previous_to_first(p.ode, y_prev, u_prev, u_first);
  } else {
    y_first = p.y;
    y_prev = ConditionStack(Eigen::VectorXd(y_first.values() - M * du.values()));
  }
  std::cout << "given: " << (p.kind == ConditionKind::previous ? "previous" : "first") << " conditions\n";
  std::cout << "Y(0-) = " << format_vector(y_prev.values()) << "\n";
  std::cout << "U(0-) = " << format_vector(u_prev.values()) << "\n";
  std::cout << "U(0+) = " << format_vector(u_first.values()) << "\n";
  std::cout << "dU = " << format_vector(du.values()) << "\n";
  std::cout << "M = " << format_matrix(M) << "\n";
  std::cout << "dY = " << format_vector(Eigen::VectorXd(M * du.values())) << "\n";
  std::cout << "Y(0+) = " << format_vector(y_first.values()) << "\n";
  return 0;
}

void print_state_space(const StateSpace& ss) {
  std::cout << "A = " << format_matrix(ss.A) << "\n";
  std::cout << "B = " << format_vector(ss.B) << "\n";
  std::cout << "C = " << format_vector(ss.C.transpose()) << "\n";
  std::cout << "D = " << detail::format_number(ss.D) << "\n";
}

int cmd_realize(const Options& opt) {
  const ProblemFile pf = load(opt);
  const LinearODE& ode = pf.problem.ode;
  const int n = ode.order();
  const RelativeDegree rd = relative_degree(ode);
  std::cout << "n = " << n << ", r = " << rd.r << ", m = " << rd.m << "\n";
  std::cout << "G(s) = " << to_string(transfer_function(ode)) << "\n";
  const std::vector<double> h = markov_parameters(ode, n + 1);
  std::cout << "h = " << format_vector(Eigen::Map<const Eigen::VectorXd>(h.data(), n + 1)) << "\n";
  const StateSpace ss = observable_canonical(ode);
  std::cout << "observable canonical realization:\n";
  print_state_space(ss);
  std::cout << "O = " << format_matrix(observability_matrix(ss)) << "\n";
  std::cout << "M = " << format_matrix(markov_matrix(ode)) << "\n";
  return 0;
}

int cmd_check(const Options& opt) {
  const Tolerances tol = tolerances_from_env();
  const ProblemFile pf = load(opt);
  const IVProblem& p = pf.problem;
  const int n = p.ode.order();
  const StateSpace ss = pf.ssr ? *pf.ssr : observable_canonical(p.ode);
  std::cout << (pf.ssr ? "state-space representation from file:\n" : "observable canonical realization:\n");
  print_state_space(ss);
  const EquivalenceReport rep = check_equivalence(p.ode, ss, tol.transfer);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "condition 1, same order n: " << yn(rep.same_order) << " (ODE " << n << ", SSR " << ss.order()
            << ")\n";
  std::cout << "condition 2, same transfer function: " << yn(rep.same_transfer_function)
            << " (mismatch " << detail::format_number(rep.transfer_mismatch) << ")\n";
  std::cout << "condition 3, observable: " << yn(rep.observable) << " (rcond "
            << detail::format_number(rep.observability_rcond) << ")\n";
  if (rep.equivalent()) {
    std::cout << "equivalent: yes (3/3)\n";
  } else {
    std::string failed;
    if (!rep.same_order) failed += "condition 1";
    if (!rep.same_transfer_function) failed += std::string(failed.empty() ? "" : ", ") + "condition 2";
    if (!rep.observable) failed += std::string(failed.empty() ? "" : ", ") + "condition 3";
    std::cout << "equivalent: no (" << failed << ")\n";
  }

  const ConditionStack du = condition_stack(p.input.future, n) - condition_stack(p.input.past, n);
  const ContinuityReport cont = classify_continuity(p.ode, du, tol.continuity);
  std::cout << "continuity at t = 0 (m = " << cont.m << ", u..u^(m-1) continuous: " << yn(cont.input_smooth)
            << ")\n";
  std::cout << "order  jump  verdict\n";
  for (const auto& row : cont.rows) {
    std::cout << derivative_name(row.order) << "  " << detail::format_number(row.jump == 0.0 ? 0.0 : row.jump)
              << "  " << (row.discontinuous ? "discontinuous" : "continuous") << "\n";
  }
  std::cout << "output stack continuous: " << yn(cont.output_continuous) << "\n";
  return 0;
}

int cmd_simulate(const Options& opt) {
  const ProblemFile pf = load(opt);
  const IVProblem& p = pf.problem;
  const std::vector<double> grid = uniform_grid(p.horizon, p.grid_points);
  const Trajectory traj = simulate_ivp(p, grid);
  if (opt.csv) {
    write_trajectory(traj, *opt.csv);
    std::cout << "trajectory: " << grid.size() << " points written to " << *opt.csv << "\n";
  } else {
    write_csv(std::cout, traj);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Initial value problems for linear ODEs with inputs switching at t = 0"};
  app.require_subcommand(1);
  Options opt;
  int (*action)(const Options&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*fn)(const Options&), bool trajectory) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", opt.file, "problem file (JSON)")->required();
    sub->add_flag("--echo", opt.echo, "print the canonical problem file and exit");
    if (trajectory) {
      sub->add_option("--csv", opt.csv, "trajectory CSV output path");
      sub->add_option("--horizon", opt.horizon, "simulation horizon t_f");
      sub->add_option("--grid", opt.grid, "number of grid points over (0, t_f]");
    }
    sub->callback([&action, fn] { action = fn; });
  };
  add("solve", "closed-form solution via the Laplace transform", cmd_solve, true);
  add("map-ic", "map previous conditions to first conditions", cmd_map_ic, false);
  add("realize", "observable canonical realization and Markov parameters", cmd_realize, false);
  add("check", "ODE/state-space equivalence and continuity at t = 0", cmd_check, false);
  add("simulate", "time-domain trajectory of the equivalent state-space model", cmd_simulate, true);

  CLI11_PARSE(app, argc, argv);
  try {
    if (opt.echo) {
      std::cout << emit_problem(load(opt));
      return 0;
    }
    return action(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotStrictlyProper& e) {
    std::cerr << "error: not strictly proper: " << e.what() << "\n";
    return 1;
  } catch (const NotObservable& e) {
    std::cerr << "error: not observable: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
