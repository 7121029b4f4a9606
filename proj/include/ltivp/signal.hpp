#pragma once

// Exponential-polynomial signals  x(t) = Re sum amp * t^k * exp(rate * t).
// The class is closed under differentiation and has rational Laplace
// transforms, which is all the closed-form solver needs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ltivp/error.hpp"
#include "ltivp/poly.hpp"

namespace ltivp {

/// amp * t^power * exp(rate * t)
struct Mode {
  Complex amp;
  int power = 0;
  Complex rate;
};

/// Rates closer than this are treated as the same rate when merging modes.
inline constexpr double kRateMergeTol = 1e-9;

/// Amplitudes at or below this are dropped by Signal::canonicalized().
inline constexpr double kNegligibleAmplitude = 1e-12;

class Signal {
 public:
  Signal() = default;

  /// Merges modes with equal power and rates within kRateMergeTol and drops
  /// exact-zero amplitudes. Modes are kept in canonical print order:
  /// descending |Re rate|, then power, then Im rate.
  explicit Signal(std::vector<Mode> modes) {
    for (const auto& m : modes) {
      if (m.power < 0) throw DomainError("signal mode with negative power");
      auto it = std::find_if(modes_.begin(), modes_.end(), [&](const Mode& x) {
        return x.power == m.power && std::abs(x.rate - m.rate) <= kRateMergeTol;
      });
      if (it == modes_.end())
        modes_.push_back(m);
      else
        it->amp += m.amp;
    }
    std::erase_if(modes_, [](const Mode& m) { return m.amp == Complex{}; });
    std::sort(modes_.begin(), modes_.end(), [](const Mode& x, const Mode& y) {
      const double ax = std::abs(x.rate.real());
      const double ay = std::abs(y.rate.real());
      if (ax != ay) return ax > ay;
      if (x.rate.real() != y.rate.real()) return x.rate.real() < y.rate.real();
      if (x.power != y.power) return x.power < y.power;
      return x.rate.imag() < y.rate.imag();
    });
  }

  static Signal zero() { return {}; }
  static Signal constant(double c) { return Signal({{c, 0, 0.0}}); }
  /// Heaviside step, as seen on t > 0.
  static Signal step(double height = 1.0) { return constant(height); }
  static Signal ramp(double slope = 1.0) { return Signal({{slope, 1, 0.0}}); }
  static Signal exp(double rate, double amp = 1.0) { return Signal({{amp, 0, rate}}); }
  static Signal cos(double w, double amp = 1.0) {
    return Signal({{0.5 * amp, 0, Complex(0.0, w)}, {0.5 * amp, 0, Complex(0.0, -w)}});
  }
  static Signal sin(double w, double amp = 1.0) {
    return Signal({{Complex(0.0, -0.5 * amp), 0, Complex(0.0, w)},
                   {Complex(0.0, 0.5 * amp), 0, Complex(0.0, -w)}});
  }

  const std::vector<Mode>& modes() const { return modes_; }
  bool is_zero() const { return modes_.empty(); }

  Complex eval_complex(double t) const {
    Complex acc{};
    for (const auto& m : modes_) acc += m.amp * std::pow(t, m.power) * std::exp(m.rate * t);
    return acc;
  }

  double operator()(double t) const { return eval_complex(t).real(); }

  /// Every mode has a mirror (conj amp, same power, conj rate).
  bool is_conjugate_closed(double tol = 1e-10) const {
    for (const auto& m : modes_) {
      const bool ok = std::any_of(modes_.begin(), modes_.end(), [&](const Mode& x) {
        return x.power == m.power && std::abs(x.rate - std::conj(m.rate)) <= kRateMergeTol &&
               std::abs(x.amp - std::conj(m.amp)) <= tol * std::max(1.0, std::abs(m.amp));
      });
      if (!ok) return false;
    }
    return true;
  }

  Signal derivative() const {
    std::vector<Mode> out;
    for (const auto& m : modes_) {
      if (m.power > 0) out.push_back({m.amp * static_cast<double>(m.power), m.power - 1, m.rate});
      if (m.rate != Complex{}) out.push_back({m.amp * m.rate, m.power, m.rate});
    }
    return Signal(std::move(out));
  }

  /// Drops modes whose amplitude magnitude is at most `tol`.
  Signal canonicalized(double tol = kNegligibleAmplitude) const {
    std::vector<Mode> keep;
    for (const auto& m : modes_)
      if (std::abs(m.amp) > tol) keep.push_back(m);
    return Signal(std::move(keep));
  }

  friend Signal operator+(const Signal& x, const Signal& y) {
    std::vector<Mode> all(x.modes_);
    all.insert(all.end(), y.modes_.begin(), y.modes_.end());
    return Signal(std::move(all));
  }
  friend Signal operator*(double c, const Signal& x) {
    std::vector<Mode> out(x.modes_);
    for (auto& m : out) m.amp *= c;
    return Signal(std::move(out));
  }
  friend Signal operator-(const Signal& x) { return -1.0 * x; }
  friend Signal operator-(const Signal& x, const Signal& y) { return x + (-y); }

 private:
  std::vector<Mode> modes_;
};

/// Input defined by one analytic expression before t = 0 and another after.
struct PiecewiseInput {
  Signal past;
  Signal future;

  static PiecewiseInput heaviside() { return {Signal::zero(), Signal::step()}; }
};

/// Values of a function and its first n-1 derivatives at one instant,
/// highest derivative first: entry 0 is the (n-1)-th derivative, entry n-1
/// the function value.
class ConditionStack {
 public:
  ConditionStack() = default;
  explicit ConditionStack(Eigen::VectorXd values) : values_(std::move(values)) {}
  ConditionStack(std::initializer_list<double> values)
      : values_(Eigen::Map<const Eigen::VectorXd>(values.begin(), static_cast<Eigen::Index>(values.size()))) {}

  static ConditionStack zeros(int n) { return ConditionStack(Eigen::VectorXd::Zero(n)); }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_(i); }
  /// Value of the k-th derivative.
  double derivative(int k) const { return values_(size() - 1 - k); }
  const Eigen::VectorXd& values() const { return values_; }

  friend ConditionStack operator+(const ConditionStack& x, const ConditionStack& y) {
    return ConditionStack(Eigen::VectorXd(x.values_ + y.values_));
  }
  friend ConditionStack operator-(const ConditionStack& x, const ConditionStack& y) {
    return ConditionStack(Eigen::VectorXd(x.values_ - y.values_));
  }
  friend ConditionStack operator*(double c, const ConditionStack& x) {
    return ConditionStack(Eigen::VectorXd(c * x.values_));
  }
  friend bool operator==(const ConditionStack& x, const ConditionStack& y) {
    return x.values_.size() == y.values_.size() && x.values_ == y.values_;
  }

 private:
  Eigen::VectorXd values_;
};

/// [x^(n-1)(0), ..., x'(0), x(0)] of the analytic expression.
inline ConditionStack condition_stack(const Signal& x, int n) {
  if (n < 1) throw DomainError("condition stack needs n >= 1");
  Eigen::VectorXd v(n);
  Signal d = x;
  for (int k = 0; k < n; ++k) {
    v(n - 1 - k) = d(0.0);
    d = d.derivative();
  }
  return ConditionStack(std::move(v));
}

/// Sum of amp * k! / (s - rate)^(k+1) over a common denominator.
inline RationalFunction laplace_transform(const Signal& x) {
  if (x.is_zero()) return {};
  // One factor (s - rate)^(kmax + 1) per distinct rate.
  std::vector<std::pair<Complex, int>> factors;
  for (const auto& m : x.modes()) {
    auto it = std::find_if(factors.begin(), factors.end(), [&](const auto& f) { return f.first == m.rate; });
    if (it == factors.end())
      factors.emplace_back(m.rate, m.power + 1);
    else
      it->second = std::max(it->second, m.power + 1);
  }
  auto power = [](Complex r, int k) {
    ComplexPolynomial p = ComplexPolynomial::constant(1.0);
    for (int i = 0; i < k; ++i) p *= ComplexPolynomial({-r, 1.0});
    return p;
  };
  ComplexPolynomial den = ComplexPolynomial::constant(1.0);
  for (const auto& [r, k] : factors) den *= power(r, k);
  ComplexPolynomial num;
  for (const auto& m : x.modes()) {
    double fact = 1.0;
    for (int i = 2; i <= m.power; ++i) fact *= i;
    ComplexPolynomial part = ComplexPolynomial::constant(m.amp * fact);
    for (const auto& [r, k] : factors) part *= power(r, r == m.rate ? k - m.power - 1 : k);
    num += part;
  }
  return {real_part(num), real_part(den)};
}

/// Poles of laplace_transform(x): each distinct rate with multiplicity one
/// more than its highest power. Empty when the rates are not closed under
/// conjugation.
inline std::optional<std::vector<Root>> signal_poles(const Signal& x) {
  std::vector<Root> poles;
  for (const auto& m : x.modes()) {
    auto it = std::find_if(poles.begin(), poles.end(), [&](const Root& r) { return r.value == m.rate; });
    if (it == poles.end())
      poles.push_back({m.rate, m.power + 1});
    else
      it->multiplicity = std::max(it->multiplicity, m.power + 1);
  }
  for (const auto& r : poles) {
    const bool paired = std::any_of(poles.begin(), poles.end(), [&](const Root& q) {
      return q.value == std::conj(r.value) && q.multiplicity == r.multiplicity;
    });
    if (!paired) return std::nullopt;
  }
  return poles;
}

/// Inverse transform of a strictly proper expansion:
/// c / (s - p)^k  ->  c / (k-1)! * t^(k-1) * exp(p t).
inline Signal from_partial_fractions(const PartialFractionExpansion& pfe) {
  if (!pfe.polynomial_part.is_zero())
    throw NotStrictlyProper("expansion has a polynomial part; its inverse transform is impulsive");
  std::vector<Mode> modes;
  for (const auto& term : pfe.terms) {
    double fact = 1.0;
    for (int i = 2; i < term.order; ++i) fact *= i;
    modes.push_back({term.coefficient / fact, term.order - 1, term.pole});
  }
  return Signal(std::move(modes));
}

namespace detail {

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace detail

/// Real-valued rendering with conjugate pairs folded, e.g.
/// "0.2 * t - 0.04 + 0.25 * exp(-1*t) * cos(2*t)".
inline std::string to_string(const Signal& x) {
  // (exp rate, power, frequency) -> (cos coefficient, sin coefficient)
  struct Key {
    double sigma;
    int power;
    double omega;
  };
  std::vector<std::pair<Key, std::pair<double, double>>> terms;
  for (const auto& m : x.modes()) {
    const double sigma = m.rate.real();
    const double omega = std::abs(m.rate.imag());
    const double sgn = m.rate.imag() < 0 ? -1.0 : 1.0;
    auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& t) {
      return t.first.power == m.power && std::abs(t.first.sigma - sigma) <= kRateMergeTol &&
             std::abs(t.first.omega - omega) <= kRateMergeTol;
    });
    if (it == terms.end()) {
      terms.push_back({{sigma, m.power, omega}, {0.0, 0.0}});
      it = terms.end() - 1;
    }
    it->second.first += m.amp.real();
    if (omega != 0.0) it->second.second += -m.amp.imag() * sgn;
  }
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const double sa = std::abs(a.first.sigma);
    const double sb = std::abs(b.first.sigma);
    if (sa != sb) return sa > sb;
    if (a.first.sigma != b.first.sigma) return a.first.sigma < b.first.sigma;
    if (a.first.power != b.first.power) return a.first.power < b.first.power;
    return a.first.omega < b.first.omega;
  });

  std::string out;
  auto emit = [&](double coeff, const Key& key, const char* trig) {
    if (coeff == 0.0) return;
    if (out.empty())
      out += coeff < 0 ? "-" : "";
    else
      out += coeff < 0 ? " - " : " + ";
    out += detail::format_number(std::abs(coeff));
    if (key.power == 1) out += " * t";
    if (key.power > 1) out += " * t^" + std::to_string(key.power);
    if (key.sigma != 0.0) out += " * exp(" + detail::format_number(key.sigma) + "*t)";
    if (trig != nullptr) out += std::string(" * ") + trig + "(" + detail::format_number(key.omega) + "*t)";
  };
  for (const auto& [key, c] : terms) {
    if (key.omega == 0.0) {
      emit(c.first, key, nullptr);
    } else {
      emit(c.first, key, "cos");
      emit(c.second, key, "sin");
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace ltivp
