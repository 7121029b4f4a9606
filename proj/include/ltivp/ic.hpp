#pragma once

// Conditions on either side of the input switch at t = 0.
//
// The state of a realization is continuous, so writing Y = O x + M U at
// t = 0- and t = 0+ and eliminating x gives
//     Y(0+) = Y(0-) + M (U(0+) - U(0-)).

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ltivp/error.hpp"
#include "ltivp/ode.hpp"
#include "ltivp/realization.hpp"
#include "ltivp/signal.hpp"

namespace ltivp {

/// Jumps at or below this magnitude count as continuity.
inline constexpr double kContinuityTol = 1e-9;

struct ConditionPair {
  ConditionStack y_prev;
  ConditionStack u_prev;
  ConditionStack u_first;
  std::optional<ConditionStack> y_first;
};

namespace detail {

inline void require_size(const ConditionStack& s, int n, const char* what) {
  if (s.size() != n)
    throw DomainError(std::string(what) + " must have " + std::to_string(n) + " entries, got " +
                      std::to_string(s.size()));
}

}  // namespace detail

inline ConditionStack map_previous_to_first(const LinearODE& ode, const ConditionStack& y_prev,
                                            const ConditionStack& u_prev, const ConditionStack& u_first) {
  const int n = ode.order();
  detail::require_size(y_prev, n, "y_prev");
  detail::require_size(u_prev, n, "u_prev");
  detail::require_size(u_first, n, "u_first");
  const Eigen::MatrixXd M = markov_matrix(ode);
  return ConditionStack(Eigen::VectorXd(y_prev.values() + M * (u_first.values() - u_prev.values())));
}

/// Fills in y_first from the other three stacks.
inline ConditionPair map_previous_to_first(const LinearODE& ode, ConditionPair pair) {
  pair.y_first = map_previous_to_first(ode, pair.y_prev, pair.u_prev, pair.u_first);
  return pair;
}

/// Solves O x = Y - M U for the state of an observable realization.
inline Eigen::VectorXd recover_state(const StateSpace& ss, const ConditionStack& y_stack,
                                     const ConditionStack& u_stack) {
  const int n = ss.order();
  detail::require_size(y_stack, n, "y stack");
  detail::require_size(u_stack, n, "u stack");
  const Eigen::MatrixXd O = observability_matrix(ss);
  const double rcond = observability_rcond(ss);
  if (!(rcond > kObservabilityRcond))
    throw NotObservable("observability matrix is singular (rcond " + std::to_string(rcond) + ")");
  const Eigen::VectorXd rhs = y_stack.values() - markov_matrix(ss) * u_stack.values();
  Eigen::VectorXd x = O.colPivHouseholderQr().solve(rhs);
  // One step of iterative refinement.
  x += O.colPivHouseholderQr().solve(Eigen::VectorXd(rhs - O * x));
  return x;
}

struct DerivativeJump {
  int order;          ///< derivative order k of y^(k)
  double jump;        ///< y^(k)(0+) - y^(k)(0-)
  bool discontinuous;
};

struct ContinuityReport {
  Eigen::VectorXd delta_y;           ///< M * u_jump, ConditionStack order
  std::vector<DerivativeJump> rows;  ///< ordered from y up to y^(n-1)
  int m = 0;
  /// Verdict from the input side: u, ..., u^(m-1) are all continuous.
  bool input_smooth = true;
  /// Verdict from the output side: every entry of delta_y is negligible.
  bool output_continuous = true;
};

/// u_jump = U(0+) - U(0-). The output stack is continuous exactly when the
/// last m entries of the jump (u, ..., u^(m-1)) vanish.
inline ContinuityReport classify_continuity(const LinearODE& ode, const ConditionStack& u_jump,
                                            double tol = kContinuityTol) {
  const int n = ode.order();
  detail::require_size(u_jump, n, "u jump");
  ContinuityReport rep;
  rep.m = relative_degree(ode).m;
  rep.delta_y = markov_matrix(ode) * u_jump.values();
  for (int k = 0; k < n; ++k) {
    const double d = rep.delta_y(n - 1 - k);
    const bool disc = std::abs(d) > tol;
    rep.rows.push_back({k, d, disc});
    if (disc) rep.output_continuous = false;
  }
  for (int k = 0; k < rep.m; ++k)
    if (std::abs(u_jump.derivative(k)) > tol) rep.input_smooth = false;
  return rep;
}

}  // namespace ltivp
