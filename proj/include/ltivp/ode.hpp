#pragma once

// y^(n) + a1 y^(n-1) + ... + an y = b0 u^(n) + b1 u^(n-1) + ... + bn u

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ltivp/error.hpp"
#include "ltivp/poly.hpp"

namespace ltivp {

class LinearODE {
 public:
  /// `a` holds a1..an (a0 = 1 is implicit), `b` holds b0..bn.
  LinearODE(Eigen::VectorXd a, Eigen::VectorXd b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() < 1) throw DomainError("ODE order must be at least 1");
    if (b_.size() != a_.size() + 1)
      throw DomainError("b must have n+1 = " + std::to_string(a_.size() + 1) + " entries, got " +
                        std::to_string(b_.size()));
    if ((b_.array() == 0.0).all()) throw DomainError("at least one b coefficient must be nonzero");
  }

  int order() const { return static_cast<int>(a_.size()); }
  const Eigen::VectorXd& a() const { return a_; }
  const Eigen::VectorXd& b() const { return b_; }

  /// a_i with a_0 = 1.
  double a_coeff(int i) const { return i == 0 ? 1.0 : a_(i - 1); }
  double b_coeff(int j) const { return j <= order() ? b_(j) : 0.0; }

 private:
  Eigen::VectorXd a_;
  Eigen::VectorXd b_;
};

struct RelativeDegree {
  int r;  ///< index of the first nonzero b
  int m;  ///< n - r
};

inline RelativeDegree relative_degree(const LinearODE& ode) {
  for (int j = 0; j <= ode.order(); ++j)
    if (ode.b_coeff(j) != 0.0) return {j, ode.order() - j};
  throw DomainError("relative degree undefined: all b coefficients are zero");
}

/// s^n + sum a_i s^(n-i)
inline Polynomial characteristic_polynomial(const LinearODE& ode) {
  const int n = ode.order();
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(n - i)] = ode.a_coeff(i);
  return Polynomial(std::move(c));
}

/// sum b_j s^(n-j)
inline Polynomial input_polynomial(const LinearODE& ode) {
  const int n = ode.order();
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) c[static_cast<std::size_t>(n - j)] = ode.b_coeff(j);
  return Polynomial(std::move(c));
}

/// B(s)/A(s) with no cancellation of common factors.
inline RationalFunction transfer_function(const LinearODE& ode) {
  return {input_polynomial(ode), characteristic_polynomial(ode)};
}

/// Polynomial weights of the condition stacks in the transformed equation:
/// X(s) = v_y . Y_stack - v_u . U_stack. Both vectors follow ConditionStack
/// order, so entry 0 multiplies the (n-1)-th derivative and is the constant
/// 1 (resp. b0); entry n-1 multiplies the value itself and has degree n-1.
struct ICVectors {
  std::vector<Polynomial> v_y;
  std::vector<Polynomial> v_u;
};

inline ICVectors ic_vectors(const LinearODE& ode) {
  const int n = ode.order();
  ICVectors out;
  out.v_y.reserve(static_cast<std::size_t>(n));
  out.v_u.reserve(static_cast<std::size_t>(n));
  // Entry idx pairs with derivative order k-1 = n-1-idx, i.e. k = n-idx, and
  // holds sum_{i=0}^{n-k} c_i s^(n-k-i).
  for (int idx = 0; idx < n; ++idx) {
    const int top = idx;  // n - k
    std::vector<double> vy(static_cast<std::size_t>(top) + 1);
    std::vector<double> vu(static_cast<std::size_t>(top) + 1);
    for (int i = 0; i <= top; ++i) {
      vy[static_cast<std::size_t>(top - i)] = ode.a_coeff(i);
      vu[static_cast<std::size_t>(top - i)] = ode.b_coeff(i);
    }
    out.v_y.emplace_back(std::move(vy));
    out.v_u.emplace_back(std::move(vu));
  }
  return out;
}

}  // namespace ltivp
