#pragma once

// Human-readable renderings used by the command-line tool.

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ltivp/poly.hpp"
#include "ltivp/signal.hpp"

namespace ltivp {

/// Descending powers, e.g. "s^2 + 6*s + 5"; "0" for the zero polynomial.
inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const double c = p[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    const bool unit = mag == 1.0 && k > 0;
    if (!unit) out += detail::format_number(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += k == 1 ? "s" : "s^" + std::to_string(k);
    }
  }
  return out;
}

/// "(num)/(den)"
inline std::string to_string(const RationalFunction& f) {
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

/// "[a, b, c]"
inline std::string format_vector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += detail::format_number(v(i) == 0.0 ? 0.0 : v(i));
  }
  return out + "]";
}

/// "[[a, b], [c, d]]"
inline std::string format_matrix(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ", ";
    out += format_vector(m.row(i).transpose());
  }
  return out + "]";
}

}  // namespace ltivp
