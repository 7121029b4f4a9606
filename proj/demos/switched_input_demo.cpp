// Input switching from cos(t) to a ramp at t = 0 on
//   y'' + 6y' + 5y = u'' + 3u' + 2u,  y(0-) = 0, y'(0-) = 1.
// Solves it from previous conditions, from the mapped first conditions, and
// by simulating the equivalent state-space model.

#include <cstdio>
#include <iostream>

#include "ltivp/ltivp.hpp"

int main() {
  using namespace ltivp;
  const LinearODE ode(Eigen::Vector2d(6, 5), Eigen::Vector3d(1, 3, 2));
  const PiecewiseInput input{Signal::cos(1.0), Signal::ramp()};
  const IVProblem previous{ode, input, ConditionKind::previous, {1.0, 0.0}, 3.0, 6};

  const ConditionStack y_first = first_conditions(previous);
  std::cout << "Y(0+) = " << format_vector(y_first.values()) << "\n";

  IVProblem first = previous;
  first.kind = ConditionKind::first;
  first.y = y_first;

  std::cout << "Y(s) from previous conditions: " << to_string(solve_laplace(previous).Ys) << "\n";
  std::cout << "Y(s) from first conditions:    " << to_string(solve_laplace(first).Ys) << "\n";

  const Signal y = solve_ivp(previous);
  std::cout << "y(t) = " << to_string(y) << "\n";

  const auto grid = uniform_grid(previous.horizon, previous.grid_points);
  const Trajectory traj = simulate_ivp(previous, grid);
  std::printf("%8s %22s %22s\n", "t", "closed form", "simulated");
  for (std::size_t i = 0; i < grid.size(); ++i) std::printf("%8.3f %22.15f %22.15f\n", grid[i], y(grid[i]), traj.outputs[i]);
  return 0;
}
