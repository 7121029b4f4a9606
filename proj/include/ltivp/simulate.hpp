#pragma once

// Time-domain trajectories of a state-space realization,
//   x(t) = e^{At} x(0) + int_0^t e^{A(t - tau)} B u(tau) dtau,
// evaluated exactly by folding the input's own generator into an augmented
// homogeneous system and stepping it with matrix exponentials.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ltivp/error.hpp"
#include "ltivp/ic.hpp"
#include "ltivp/laplace.hpp"
#include "ltivp/realization.hpp"
#include "ltivp/signal.hpp"

namespace ltivp {

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd states;  ///< one row per time point
  std::vector<double> outputs;
};

/// n points t_f * i / n, i = 1..n.
inline std::vector<double> uniform_grid(double horizon, int points) {
  if (!(horizon > 0.0) || points < 1) throw DomainError("grid needs horizon > 0 and at least one point");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) g[static_cast<std::size_t>(i - 1)] = horizon * i / points;
  return g;
}

namespace detail {

/// Augmented generator [[A, B h], [0, F]] where z' = F z reproduces the
/// input modes as u = h z with z_j = t^j e^{rate t} / j!.
struct AugmentedSystem {
  Eigen::MatrixXcd F;
  Eigen::VectorXcd w0;
};

inline AugmentedSystem augment(const StateSpace& ss, const Eigen::VectorXd& x0, const Signal& input) {
  const int n = ss.order();
  struct Block {
    Complex rate;
    int top_power;
    int offset = 0;
  };
  std::vector<Block> blocks;
  for (const auto& m : input.modes()) {
    auto it = std::find_if(blocks.begin(), blocks.end(), [&](const Block& b) { return b.rate == m.rate; });
    if (it == blocks.end())
      blocks.push_back({m.rate, m.power});
    else
      it->top_power = std::max(it->top_power, m.power);
  }
  int size = n;
  for (auto& b : blocks) {
    b.offset = size;
    size += b.top_power + 1;
  }
  AugmentedSystem aug;
  aug.F = Eigen::MatrixXcd::Zero(size, size);
  aug.w0 = Eigen::VectorXcd::Zero(size);
  aug.F.topLeftCorner(n, n) = ss.A.cast<Complex>();
  aug.w0.head(n) = x0.cast<Complex>();
  for (const auto& b : blocks) {
    for (int j = 0; j <= b.top_power; ++j) {
      aug.F(b.offset + j, b.offset + j) = b.rate;
      if (j > 0) aug.F(b.offset + j, b.offset + j - 1) = 1.0;
    }
    aug.w0(b.offset) = 1.0;
  }
  for (const auto& m : input.modes()) {
    const auto it = std::find_if(blocks.begin(), blocks.end(), [&](const Block& b) { return b.rate == m.rate; });
    double fact = 1.0;
    for (int i = 2; i <= m.power; ++i) fact *= i;
    aug.F.block(0, it->offset + m.power, n, 1) += ss.B.cast<Complex>() * (m.amp * fact);
  }
  return aug;
}

}  // namespace detail

/// Trajectory on the given grid starting from state x0 at t = 0. Each grid
/// interval is advanced by exp(F dt); equal spacings reuse one exponential.
inline Trajectory simulate(const StateSpace& ss, const Eigen::VectorXd& x0, const Signal& input,
                           const std::vector<double>& grid) {
  const int n = ss.order();
  if (x0.size() != n) throw DomainError("initial state has the wrong dimension");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || (i > 0 && !(grid[i] > grid[i - 1])))
      throw DomainError("grid must be nonnegative and strictly increasing");
  }
  const detail::AugmentedSystem aug = detail::augment(ss, x0, input);

  Trajectory traj;
  traj.times = grid;
  traj.states.resize(static_cast<Eigen::Index>(grid.size()), n);
  traj.outputs.resize(grid.size());

  Eigen::VectorXcd w = aug.w0;
  double t_prev = 0.0;
  double cached_dt = -1.0;
  Eigen::MatrixXcd phi;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dt = grid[i] - t_prev;
    if (dt > 0.0) {
      if (std::abs(dt - cached_dt) > 1e-14 * dt) {
        phi = (aug.F * Complex(dt)).exp();
        cached_dt = dt;
      }
      w = phi * w;
    }
    t_prev = grid[i];
    const Eigen::VectorXd x = w.head(n).real();
    traj.states.row(static_cast<Eigen::Index>(i)) = x.transpose();
    traj.outputs[i] = ss.C.dot(x) + ss.D * input(grid[i]);
  }
  return traj;
}

/// Solution of the IVP as the trajectory of its observable canonical
/// realization, started from the state that matches Y(0+).
inline Trajectory simulate_ivp(const IVProblem& p, const std::vector<double>& grid) {
  const StateSpace ss = observable_canonical(p.ode);
  const ConditionStack y_first = first_conditions(p);
  const ConditionStack u_first = condition_stack(p.input.future, p.ode.order());
  const Eigen::VectorXd x0 = recover_state(ss, y_first, u_first);
  return simulate(ss, x0, p.input.future, grid);
}

/// "t,y,x1..xn" with 17 significant digits.
inline void write_csv(std::ostream& os, const Trajectory& traj) {
  const auto n = traj.states.cols();
  os << "t,y";
  for (Eigen::Index j = 0; j < n; ++j) os << ",x" << (j + 1);
  os << '\n';
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    put(traj.times[i]);
    os << ',';
    put(traj.outputs[i]);
    for (Eigen::Index j = 0; j < n; ++j) {
      os << ',';
      put(traj.states(static_cast<Eigen::Index>(i), j));
    }
    os << '\n';
  }
}

}  // namespace ltivp
