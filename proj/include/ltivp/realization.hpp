#pragma once

// State-space realizations of a LinearODE and the quantities that tie the
// two descriptions together: Markov parameters, the observability matrix
// and the Markov matrix in  Y_stack = O x + M U_stack.

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ltivp/error.hpp"
#include "ltivp/ode.hpp"
#include "ltivp/poly.hpp"

namespace ltivp {

/// x' = A x + B u,  y = C x + D u  (single input, single output).
struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;
  double D = 0.0;

  StateSpace() = default;
  StateSpace(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::RowVectorXd c, double d)
      : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(d) {
    const auto n = A.rows();
    if (n < 1 || A.cols() != n || B.size() != n || C.size() != n)
      throw DomainError("inconsistent state-space dimensions");
  }

  int order() const { return static_cast<int>(A.rows()); }
};

/// Observability condition threshold: O counts as singular when its
/// smallest singular value is at most this times the largest.
inline constexpr double kObservabilityRcond = 1e-9;

/// h_0 = b_0, h_j = b_j - sum_{i=1}^{min(j,n)} a_i h_{j-i}  (b_j = 0 past n).
inline std::vector<double> markov_parameters(const LinearODE& ode, int count) {
  if (count < 1) throw DomainError("markov_parameters needs count >= 1");
  const int n = ode.order();
  std::vector<double> h(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    double v = ode.b_coeff(j);
    for (int i = 1; i <= std::min(j, n); ++i) v -= ode.a_coeff(i) * h[static_cast<std::size_t>(j - i)];
    h[static_cast<std::size_t>(j)] = v;
  }
  return h;
}

/// h_0 = D, h_i = C A^(i-1) B.
inline std::vector<double> markov_parameters(const StateSpace& ss, int count) {
  if (count < 1) throw DomainError("markov_parameters needs count >= 1");
  std::vector<double> h(static_cast<std::size_t>(count));
  h[0] = ss.D;
  Eigen::VectorXd v = ss.B;
  for (int i = 1; i < count; ++i) {
    h[static_cast<std::size_t>(i)] = ss.C.dot(v);
    v = ss.A * v;
  }
  return h;
}

/// Rows C A^(n-1), ..., C A, C from top to bottom.
inline Eigen::MatrixXd observability_matrix(const StateSpace& ss) {
  const int n = ss.order();
  Eigen::MatrixXd O(n, n);
  Eigen::RowVectorXd row = ss.C;
  for (int i = n - 1; i >= 0; --i) {
    O.row(i) = row;
    row = row * ss.A;
  }
  return O;
}

/// Upper-triangular Toeplitz matrix with first row h_0 ... h_{n-1}.
inline Eigen::MatrixXd markov_matrix(std::span<const double> h, int n) {
  if (static_cast<int>(h.size()) < n) throw DomainError("not enough Markov parameters");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) M(i, j) = h[static_cast<std::size_t>(j - i)];
  return M;
}

inline Eigen::MatrixXd markov_matrix(const LinearODE& ode) {
  return markov_matrix(markov_parameters(ode, ode.order()), ode.order());
}

inline Eigen::MatrixXd markov_matrix(const StateSpace& ss) {
  return markov_matrix(markov_parameters(ss, ss.order()), ss.order());
}

/// Observable canonical form: subdiagonal ones, -a_n ... -a_1 down the last
/// column, C = [0 ... 0 1], D = h_0, and B solving C A^(i-1) B = h_i.
inline StateSpace observable_canonical(const LinearODE& ode) {
  const int n = ode.order();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) A(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) A(i, n - 1) = -ode.a_coeff(n - i);
  Eigen::RowVectorXd C = Eigen::RowVectorXd::Zero(n);
  C(n - 1) = 1.0;

  const std::vector<double> h = markov_parameters(ode, n + 1);
  // Rows C, CA, ..., CA^(n-1); anti-triangular with unit anti-diagonal.
  Eigen::MatrixXd K(n, n);
  Eigen::RowVectorXd row = C;
  for (int i = 0; i < n; ++i) {
    K.row(i) = row;
    row = row * A;
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(h.data() + 1, n);
  Eigen::VectorXd B = K.partialPivLu().solve(rhs);
  return {std::move(A), std::move(B), std::move(C), h[0]};
}

/// C (sI - A)^-1 B + D via Faddeev-LeVerrier: adj(sI - A) = sum_k N_k s^(n-k),
/// N_1 = I, N_{k+1} = A N_k + c_{n-k} I, with det(sI - A) = sum c_i s^i.
inline RationalFunction ss_transfer_function(const StateSpace& ss) {
  const int n = ss.order();
  std::vector<double> charpoly(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> numer(static_cast<std::size_t>(n) + 1, 0.0);
  charpoly[static_cast<std::size_t>(n)] = 1.0;
  Eigen::MatrixXd N = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    numer[static_cast<std::size_t>(n - k)] = ss.C * N * ss.B;
    const Eigen::MatrixXd AN = ss.A * N;
    const double c = -AN.trace() / k;
    charpoly[static_cast<std::size_t>(n - k)] = c;
    N = AN + c * Eigen::MatrixXd::Identity(n, n);
  }
  const Polynomial den(charpoly);
  return {Polynomial(numer) + ss.D * den, den};
}

struct EquivalenceReport {
  bool same_order = false;
  bool same_transfer_function = false;
  bool observable = false;
  double transfer_mismatch = 0.0;  ///< rational_mismatch of the two G(s)
  double observability_rcond = 0.0;  ///< sigma_min / sigma_max of O

  bool equivalent() const { return same_order && same_transfer_function && observable; }
  int conditions_met() const { return int(same_order) + int(same_transfer_function) + int(observable); }
};

inline double observability_rcond(const StateSpace& ss) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(observability_matrix(ss));
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  return smax == 0.0 ? 0.0 : sv(sv.size() - 1) / smax;
}

/// Same order, same transfer function, observable.
inline EquivalenceReport check_equivalence(const LinearODE& ode, const StateSpace& ss,
                                           double tf_tol = 1e-9) {
  EquivalenceReport rep;
  rep.same_order = ode.order() == ss.order();
  rep.transfer_mismatch = rational_mismatch(transfer_function(ode), ss_transfer_function(ss));
  rep.same_transfer_function = rep.transfer_mismatch <= tf_tol;
  rep.observability_rcond = observability_rcond(ss);
  rep.observable = rep.observability_rcond > kObservabilityRcond;
  return rep;
}

}  // namespace ltivp
