#pragma once

// Dense univariate polynomials and rational functions in the Laplace
// variable s, plus companion-matrix root finding and partial fractions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ltivp/error.hpp"

namespace ltivp {

using Complex = std::complex<double>;

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& z) { return std::abs(z); }

}  // namespace detail

/// Polynomial with coefficients stored lowest degree first. Trailing zero
/// coefficients are trimmed on construction, so the zero polynomial is the
/// empty coefficient vector and degree() returns -1 for it.
template <typename T>
class BasicPolynomial {
 public:
  using value_type = T;

  BasicPolynomial() = default;
  BasicPolynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }
  explicit BasicPolynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static BasicPolynomial constant(T c) { return BasicPolynomial({c}); }

  /// c * s^k
  static BasicPolynomial monomial(T c, int k) {
    std::vector<T> v(static_cast<std::size_t>(k) + 1, T{});
    v.back() = c;
    return BasicPolynomial(std::move(v));
  }

  /// Product of (s - r) over the given roots.
  template <typename Range>
  static BasicPolynomial from_roots(const Range& roots) {
    BasicPolynomial p = constant(T{1});
    for (const auto& r : roots) p = p * BasicPolynomial({-T(r), T{1}});
    return p;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient of s^i; zero beyond the degree.
  T operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T{}; }

  T leading() const { return coeffs_.empty() ? T{} : coeffs_.back(); }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, detail::magnitude(c));
    return m;
  }

  /// Horner evaluation. The result type is complex whenever either the
  /// coefficients or the argument are.
  template <typename Z>
  auto operator()(const Z& z) const {
    using R = decltype(T{} * z);
    R acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  BasicPolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return BasicPolynomial(std::move(d));
  }

  /// First `count` coefficients of the expansion of p(z0 + w) in powers of w.
  template <typename Z>
  std::vector<Complex> taylor(const Z& z0, int count) const {
    std::vector<Complex> c(coeffs_.begin(), coeffs_.end());
    const int deg = degree();
    std::vector<Complex> out(static_cast<std::size_t>(std::max(count, 0)), Complex{});
    if (deg < 0) return out;
    const Complex z(z0);
    for (int i = 0; i < count && i <= deg; ++i) {
      for (int j = deg - 1; j >= i; --j) c[j] += z * c[j + 1];
      out[i] = c[i];
    }
    return out;
  }

  BasicPolynomial operator-() const {
    std::vector<T> v(coeffs_);
    for (auto& c : v) c = -c;
    return BasicPolynomial(std::move(v));
  }

  friend BasicPolynomial operator+(const BasicPolynomial& p, const BasicPolynomial& q) {
    std::vector<T> v(std::max(p.size(), q.size()), T{});
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p[i] + q[i];
    return BasicPolynomial(std::move(v));
  }

  friend BasicPolynomial operator-(const BasicPolynomial& p, const BasicPolynomial& q) {
    return p + (-q);
  }

  friend BasicPolynomial operator*(const BasicPolynomial& p, const BasicPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<T> v(p.size() + q.size() - 1, T{});
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return BasicPolynomial(std::move(v));
  }

  friend BasicPolynomial operator*(const T& c, const BasicPolynomial& p) {
    std::vector<T> v(p.coeffs_);
    for (auto& x : v) x *= c;
    return BasicPolynomial(std::move(v));
  }
  friend BasicPolynomial operator*(const BasicPolynomial& p, const T& c) { return c * p; }

  BasicPolynomial& operator+=(const BasicPolynomial& q) { return *this = *this + q; }
  BasicPolynomial& operator-=(const BasicPolynomial& q) { return *this = *this - q; }
  BasicPolynomial& operator*=(const BasicPolynomial& q) { return *this = *this * q; }

  friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T{}) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using Polynomial = BasicPolynomial<double>;
using ComplexPolynomial = BasicPolynomial<Complex>;

/// The polynomial s.
inline Polynomial s_var() { return Polynomial({0.0, 1.0}); }

/// Real part of every coefficient.
inline Polynomial real_part(const ComplexPolynomial& p) {
  std::vector<double> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) v.push_back(c.real());
  return Polynomial(std::move(v));
}

inline ComplexPolynomial to_complex(const Polynomial& p) {
  return ComplexPolynomial(std::vector<Complex>(p.coeffs().begin(), p.coeffs().end()));
}

/// Euclidean division: a = q*b + r with degree(r) < degree(b).
template <typename T>
std::pair<BasicPolynomial<T>, BasicPolynomial<T>> divmod(const BasicPolynomial<T>& a,
                                                         const BasicPolynomial<T>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {BasicPolynomial<T>{}, a};
  std::vector<T> rem(a.coeffs());
  const int db = b.degree();
  std::vector<T> quo(static_cast<std::size_t>(a.degree() - db) + 1, T{});
  for (int k = a.degree() - db; k >= 0; --k) {
    const T c = rem[k + db] / b.leading();
    quo[k] = c;
    for (int j = 0; j <= db; ++j) rem[k + j] -= c * b[j];
    rem[k + db] = T{};
  }
  rem.resize(static_cast<std::size_t>(db));
  return {BasicPolynomial<T>(std::move(quo)), BasicPolynomial<T>(std::move(rem))};
}

/// num(s)/den(s), always stored with a monic denominator. Common factors
/// are never cancelled implicitly.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    const double lead = den_.leading();
    if (lead != 1.0) {
      std::vector<double> n(num_.coeffs());
      std::vector<double> d(den_.coeffs());
      for (auto& c : n) c /= lead;
      for (auto& c : d) c /= lead;
      d.back() = 1.0;
      num_ = Polynomial(std::move(n));
      den_ = Polynomial(std::move(d));
    }
  }
  explicit RationalFunction(Polynomial p) : RationalFunction(std::move(p), Polynomial::constant(1.0)) {}

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_strictly_proper() const { return num_.degree() < den_.degree(); }

  template <typename Z>
  auto operator()(const Z& z) const {
    return num_(z) / den_(z);
  }

  friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) {
    if (f.den_ == g.den_) return {f.num_ + g.num_, f.den_};
    return {f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_};
  }
  friend RationalFunction operator-(const RationalFunction& f) { return {-f.num_, f.den_}; }
  friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) {
    return f + (-g);
  }
  friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
    return {f.num_ * g.num_, f.den_ * g.den_};
  }
  friend RationalFunction operator*(double c, const RationalFunction& f) { return {c * f.num_, f.den_}; }

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Mismatch between two rational functions: the largest coefficient of
/// f.num*g.den - g.num*f.den, relative to max(1, largest coefficient of
/// either cross product). Zero when the two are the same function, even
/// when one carries uncancelled common factors.
inline double rational_mismatch(const RationalFunction& f, const RationalFunction& g) {
  const Polynomial lhs = f.num() * g.den();
  const Polynomial rhs = g.num() * f.den();
  const Polynomial diff = lhs - rhs;
  const double scale = std::max({1.0, lhs.max_abs_coeff(), rhs.max_abs_coeff()});
  return diff.max_abs_coeff() / scale;
}

inline bool rational_equal(const RationalFunction& f, const RationalFunction& g, double tol) {
  return rational_mismatch(f, g) <= tol;
}

// ---------------------------------------------------------------------------
// Root finding

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Relative distance at which two computed roots count as one double root.
/// A cluster of k roots is merged when (diameter/scale)^k <= kRootClusterTol^2,
/// which reduces to the plain distance test for k = 2 and admits the
/// eps^(1/k) splitting that an exact k-fold root suffers in floating point.
inline constexpr double kRootClusterTol = 1e-7;

namespace detail {

/// Parlett-Reinsch diagonal balancing with radix 2, in place.
inline void balance(Eigen::MatrixXd& m) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const Eigen::Index n = m.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

/// Eigenvalues of the balanced companion matrix of a polynomial with
/// nonzero constant term.
inline std::vector<Complex> companion_eigenvalues(const Polynomial& p) {
  const int d = p.degree();
  if (d < 1) return {};
  if (d == 1) return {Complex(-p[0] / p[1], 0.0)};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[static_cast<std::size_t>(i)] / p.leading();
  balance(comp);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) throw DomainError("eigenvalue iteration did not converge");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

inline double cluster_score(const std::vector<Complex>& pts) {
  Complex mean{};
  for (const auto& z : pts) mean += z;
  mean /= static_cast<double>(pts.size());
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, std::abs(pts[i] - pts[j]));
  if (diam == 0.0) return -std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, std::abs(mean));
  return static_cast<double>(pts.size()) * std::log(diam / scale);
}

/// Newton refinement of a k-fold root on the (k-1)-th derivative, where it
/// is simple. Accepts a step only if it reduces the residual.
template <typename Z>
Z polish(const Polynomial& p, int multiplicity, Z z) {
  Polynomial q = p;
  for (int i = 1; i < multiplicity; ++i) q = q.derivative();
  const Polynomial dq = q.derivative();
  for (int it = 0; it < 4; ++it) {
    const auto fz = q(z);
    const auto dfz = dq(z);
    if (std::abs(dfz) == 0.0) break;
    const Z next = z - fz / dfz;
    if (!(std::abs(q(next)) < std::abs(fz))) break;
    z = next;
  }
  return z;
}

}  // namespace detail

/// Roots of a nonzero polynomial with multiplicities summing to its degree.
/// Exact zero roots are split off from trailing zero coefficients; the rest
/// come from the companion matrix, are clustered, and are polished. Complex
/// roots of real polynomials are returned as exact conjugate pairs. Sorted by
/// real part, then imaginary part.
inline std::vector<Root> poly_roots(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("roots of the zero polynomial are undefined");
  std::vector<Root> out;
  std::size_t zeros = 0;
  while (zeros < p.size() && p[zeros] == 0.0) ++zeros;
  if (zeros > 0) out.push_back({Complex{}, static_cast<int>(zeros)});
  const Polynomial rest(std::vector<double>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros),
                                            p.coeffs().end()));

  const std::vector<Complex> eig = detail::companion_eigenvalues(rest);
  // Greedy clustering: repeatedly take the largest group of mutually
  // nearest eigenvalues that passes the multiplicity test.
  const double threshold = 2.0 * std::log(kRootClusterTol);
  std::vector<std::vector<Complex>> clusters;
  std::vector<std::size_t> pool(eig.size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  while (!pool.empty()) {
    std::vector<std::size_t> best_members;
    double best_score = std::numeric_limits<double>::infinity();
    for (const std::size_t c : pool) {
      std::vector<std::size_t> order(pool);
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(eig[x] - eig[c]) < std::abs(eig[y] - eig[c]);
      });
      std::vector<Complex> pts;
      for (std::size_t k = 0; k < order.size(); ++k) {
        pts.push_back(eig[order[k]]);
        if (pts.size() < 2) continue;
        const double score = detail::cluster_score(pts);
        if (score > threshold) continue;
        if (pts.size() > best_members.size() || (pts.size() == best_members.size() && score < best_score)) {
          best_members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k + 1));
          best_score = score;
        }
      }
    }
    if (best_members.empty()) {
      for (const std::size_t i : pool) clusters.push_back({eig[i]});
      break;
    }
    std::vector<Complex> members;
    for (const std::size_t i : best_members) members.push_back(eig[i]);
    clusters.push_back(std::move(members));
    std::erase_if(pool, [&](std::size_t i) {
      return std::find(best_members.begin(), best_members.end(), i) != best_members.end();
    });
  }

  std::vector<Root> found;
  for (const auto& c : clusters) {
    Complex mean{};
    for (const auto& z : c) mean += z;
    mean /= static_cast<double>(c.size());
    found.push_back({mean, static_cast<int>(c.size())});
  }

  // Conjugate symmetry: pair each upper-half root with its nearest mirror
  // of equal multiplicity; anything left unpaired is snapped onto the axis.
  std::vector<bool> used(found.size(), false);
  std::vector<Root> sym;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].value.imag() <= 0.0) continue;
    std::size_t partner = found.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < found.size(); ++j) {
      if (used[j] || found[j].value.imag() >= 0.0 || found[j].multiplicity != found[i].multiplicity)
        continue;
      const double d = std::abs(found[j].value - std::conj(found[i].value));
      if (d < best) {
        best = d;
        partner = j;
      }
    }
    if (partner == found.size()) continue;
    used[i] = used[partner] = true;
    const Complex avg = 0.5 * (found[i].value + std::conj(found[partner].value));
    sym.push_back({avg, found[i].multiplicity});
    sym.push_back({std::conj(avg), found[i].multiplicity});
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!used[i]) sym.push_back({Complex(found[i].value.real(), 0.0), found[i].multiplicity});
  }

  for (auto& r : sym) {
    if (r.value.imag() == 0.0) {
      r.value = Complex(detail::polish(rest, r.multiplicity, r.value.real()), 0.0);
    }
  }
  for (auto& r : sym) {
    if (r.value.imag() > 0.0) {
      const Complex z = detail::polish(rest, r.multiplicity, r.value);
      for (auto& other : sym) {
        if (other.value == std::conj(r.value) && other.multiplicity == r.multiplicity) {
          other.value = std::conj(z);
          break;
        }
      }
      r.value = z;
    }
  }

  out.insert(out.end(), sym.begin(), sym.end());
  std::sort(out.begin(), out.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Partial fractions

/// coefficient / (s - pole)^order
struct PartialFractionTerm {
  Complex pole;
  int order = 1;
  Complex coefficient;
};

struct PartialFractionExpansion {
  Polynomial polynomial_part;
  std::vector<PartialFractionTerm> terms;
};

/// Union of two root lists; roots closer than kRootClusterTol (relative to
/// max(1, |root|)) are combined, keeping the value from `a`.
inline std::vector<Root> merge_roots(std::vector<Root> a, const std::vector<Root>& b) {
  for (const Root& r : b) {
    auto it = std::find_if(a.begin(), a.end(), [&](const Root& x) {
      return std::abs(x.value - r.value) <= kRootClusterTol * std::max(1.0, std::abs(x.value));
    });
    if (it == a.end())
      a.push_back(r);
    else
      it->multiplicity += r.multiplicity;
  }
  std::sort(a.begin(), a.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return a;
}

/// Expansion over a denominator whose roots are already known. `poles` must
/// hold every root of rf.den() with its multiplicity, complex ones in exact
/// conjugate pairs; coefficients of a k-fold pole are the Taylor
/// coefficients of num/(den/(s - p)^k) at p. Lower-half-plane terms are
/// exact conjugates of the upper-half ones.
inline PartialFractionExpansion partial_fractions(const RationalFunction& rf, const std::vector<Root>& poles) {
  int total = 0;
  for (const auto& r : poles) total += r.multiplicity;
  if (total != rf.den().degree())
    throw DomainError("pole multiplicities do not add up to the denominator degree");
  PartialFractionExpansion pfe;
  auto [quot, rem] = divmod(rf.num(), rf.den());
  pfe.polynomial_part = quot;
  if (rf.den().degree() == 0) return pfe;

  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Root& pole = poles[i];
    if (pole.value.imag() < 0.0) continue;
    const int m = pole.multiplicity;
    const std::vector<Complex> rt = rem.taylor(pole.value, m);
    // Taylor coefficients of the cofactor prod_{j != i} (s - p_j)^{m_j}.
    std::vector<Complex> qt(static_cast<std::size_t>(m), Complex{});
    qt[0] = 1.0;
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j == i) continue;
      const Complex shift = pole.value - poles[j].value;
      for (int rep = 0; rep < poles[j].multiplicity; ++rep) {
        for (int k = m - 1; k >= 0; --k) qt[k] = qt[k] * shift + (k > 0 ? qt[k - 1] : Complex{});
      }
    }
    std::vector<Complex> g(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      Complex acc = rt[k];
      for (int j = 1; j <= k; ++j) acc -= qt[j] * g[k - j];
      g[k] = acc / qt[0];
    }
    for (int k = 0; k < m; ++k) {
      const int order = m - k;
      pfe.terms.push_back({pole.value, order, g[k]});
      if (pole.value.imag() > 0.0) pfe.terms.push_back({std::conj(pole.value), order, std::conj(g[k])});
    }
  }
  std::sort(pfe.terms.begin(), pfe.terms.end(), [](const auto& x, const auto& y) {
    if (x.pole.real() != y.pole.real()) return x.pole.real() < y.pole.real();
    if (x.pole.imag() != y.pole.imag()) return x.pole.imag() < y.pole.imag();
    return x.order < y.order;
  });
  return pfe;
}

/// Expansion of a rational function into its polynomial part plus simple
/// terms c/(s - p)^k, with poles from poly_roots(den).
inline PartialFractionExpansion partial_fractions(const RationalFunction& rf) {
  if (rf.den().degree() == 0) return partial_fractions(rf, {});
  return partial_fractions(rf, poly_roots(rf.den()));
}

/// Sums the expansion back over the common denominator prod (s - p)^kmax.
inline RationalFunction recombine(const PartialFractionExpansion& pfe) {
  struct PoleOrder {
    Complex pole;
    int order;
  };
  std::vector<PoleOrder> factors;
  for (const auto& t : pfe.terms) {
    auto it = std::find_if(factors.begin(), factors.end(),
                           [&](const PoleOrder& f) { return f.pole == t.pole; });
    if (it == factors.end())
      factors.push_back({t.pole, t.order});
    else
      it->order = std::max(it->order, t.order);
  }
  auto power = [](Complex pole, int k) {
    ComplexPolynomial p = ComplexPolynomial::constant(1.0);
    for (int i = 0; i < k; ++i) p *= ComplexPolynomial({-pole, 1.0});
    return p;
  };
  ComplexPolynomial den = ComplexPolynomial::constant(1.0);
  for (const auto& f : factors) den *= power(f.pole, f.order);

  ComplexPolynomial num = to_complex(pfe.polynomial_part) * den;
  for (const auto& t : pfe.terms) {
    ComplexPolynomial part = ComplexPolynomial::constant(t.coefficient);
    for (const auto& f : factors) part *= power(f.pole, f.pole == t.pole ? f.order - t.order : f.order);
    num += part;
  }
  return {real_part(num), real_part(den)};
}

}  // namespace ltivp
