#pragma once

// Closed-form solution of the IVP in the Laplace domain:
//
//   Y(s) = [ B(s) U(s) + v_y . Y_stack - v_u . U_stack ] / A(s)
//
// Either the previous stacks (t = 0-) or the first stacks (t = 0+) may be
// fed in; both give the same Y(s) because v_y^T M = v_u^T.

#include <utility>
#include <vector>

#include "ltivp/error.hpp"
#include "ltivp/ic.hpp"
#include "ltivp/ode.hpp"
#include "ltivp/poly.hpp"
#include "ltivp/signal.hpp"

namespace ltivp {

enum class ConditionKind { previous, first };

struct IVProblem {
  LinearODE ode;
  PiecewiseInput input;
  ConditionKind kind = ConditionKind::first;
  /// Output stack at 0- (previous) or 0+ (first), highest derivative first.
  ConditionStack y;
  double horizon = 1.0;
  int grid_points = 200;
};

struct LaplaceSolution {
  RationalFunction Ys;
  /// X(s) = v_y . Y_stack - v_u . U_stack
  Polynomial ic_numerator;
  RationalFunction zero_state_part;
  RationalFunction zero_input_part;
  /// Roots of Ys.den() when known in factored form, otherwise empty.
  std::vector<Root> poles;
};

inline LaplaceSolution assemble(const LinearODE& ode, const RationalFunction& Us,
                                const ConditionStack& y_stack, const ConditionStack& u_stack) {
  const int n = ode.order();
  detail::require_size(y_stack, n, "y stack");
  detail::require_size(u_stack, n, "u stack");
  const ICVectors v = ic_vectors(ode);
  Polynomial X;
  for (int i = 0; i < n; ++i) {
    X += y_stack[i] * v.v_y[static_cast<std::size_t>(i)];
    X -= u_stack[i] * v.v_u[static_cast<std::size_t>(i)];
  }
  const Polynomial A = characteristic_polynomial(ode);
  const Polynomial B = input_polynomial(ode);
  LaplaceSolution sol;
  sol.ic_numerator = X;
  sol.zero_state_part = RationalFunction(B * Us.num(), A * Us.den());
  sol.zero_input_part = RationalFunction(X, A);
  sol.Ys = RationalFunction(B * Us.num() + X * Us.den(), A * Us.den());
  return sol;
}

/// The stacks the problem designates: (Y(0-), U(0-)) for previous
/// conditions, (Y(0+), U(0+)) for first conditions. For first conditions
/// the past input is never consulted.
inline std::pair<ConditionStack, ConditionStack> designated_stacks(const IVProblem& p) {
  const int n = p.ode.order();
  detail::require_size(p.y, n, "y conditions");
  if (p.kind == ConditionKind::previous) return {p.y, condition_stack(p.input.past, n)};
  return {p.y, condition_stack(p.input.future, n)};
}

/// Y(0+), mapping from previous conditions when needed.
inline ConditionStack first_conditions(const IVProblem& p) {
  const int n = p.ode.order();
  detail::require_size(p.y, n, "y conditions");
  if (p.kind == ConditionKind::first) return p.y;
  return map_previous_to_first(p.ode, p.y, condition_stack(p.input.past, n), condition_stack(p.input.future, n));
}

inline ConditionPair condition_pair(const IVProblem& p) {
  const int n = p.ode.order();
  ConditionPair pair;
  pair.u_first = condition_stack(p.input.future, n);
  if (p.kind == ConditionKind::previous) {
    pair.y_prev = p.y;
    pair.u_prev = condition_stack(p.input.past, n);
  }
  pair.y_first = first_conditions(p);
  return pair;
}

/// Y(s) for the problem. The denominator is A(s) times the input's, so its
/// poles are the roots of A(s) together with the input's exact rates.
inline LaplaceSolution solve_laplace(const IVProblem& p) {
  const auto [y, u] = designated_stacks(p);
  LaplaceSolution sol = assemble(p.ode, laplace_transform(p.input.future), y, u);
  if (auto input_poles = signal_poles(p.input.future))
    sol.poles = merge_roots(std::move(*input_poles), poly_roots(characteristic_polynomial(p.ode)));
  return sol;
}

/// Inverse transform of a strictly proper Y(s), optionally with the roots of
/// its denominator supplied.
inline Signal invert(const RationalFunction& Ys, const std::vector<Root>& poles = {}) {
  if (!Ys.is_strictly_proper() && !Ys.num().is_zero())
    throw NotStrictlyProper("Y(s) is not strictly proper; the response contains impulses");
  const PartialFractionExpansion pfe = poles.empty() ? partial_fractions(Ys) : partial_fractions(Ys, poles);
  return from_partial_fractions(pfe).canonicalized();
}

/// y(t) for t > 0.
inline Signal solve_ivp(const IVProblem& p) {
  const LaplaceSolution sol = solve_laplace(p);
  return invert(sol.Ys, sol.poles);
}

}  // namespace ltivp
