#ifndef ITERFRAC_SERIES_HPP
#define ITERFRAC_SERIES_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "iterfrac/scalar.hpp"

namespace iterfrac {

// Truncated formal power series, stored as ordinary coefficients c_0..c_N.
// Exponential views (a_n = n! c_n) are computed on demand.
class Series {
 public:
  // Hard cap on the truncation order; the downstream partition sums grow
  // super-polynomially beyond desk scale.
  static constexpr int kMaxOrder = 40;
  static constexpr int kDefaultOrder = 16;

  Series(Mode m, int order) : mode_(m) {
    check_order(order);
    c_.assign(static_cast<std::size_t>(order) + 1, Scalar::zero(m));
  }

  explicit Series(std::vector<Scalar> coeffs) {
    if (coeffs.empty()) throw BadRange("series needs at least one coefficient");
    check_order(static_cast<int>(coeffs.size()) - 1);
    mode_ = coeffs.front().mode();
    for (const Scalar& c : coeffs)
      if (c.mode() != mode_) throw ModeMismatch("mixed-mode series coefficients");
    c_ = std::move(coeffs);
  }

  Mode mode() const { return mode_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }

  const Scalar& coeff(int n) const {
    if (n < 0 || n > order()) throw BadRange("coefficient index out of range");
    return c_[static_cast<std::size_t>(n)];
  }
  void set_coeff(int n, Scalar v) {
    if (n < 0 || n > order()) throw BadRange("coefficient index out of range");
    if (v.mode() != mode_) throw ModeMismatch("coefficient mode mismatch");
    c_[static_cast<std::size_t>(n)] = std::move(v);
  }

  const std::vector<Scalar>& coeffs() const { return c_; }

  // q := f'(0) = c_1.
  Scalar q() const { return coeff(std::min(1, order())); }

  bool is_invertible() const {
    return order() >= 1 && coeff(0).is_zero() && !coeff(1).is_zero();
  }
  void require_invertible() const {
    if (!is_invertible())
      throw NotInvertible("series must satisfy f(0) = 0 and f'(0) != 0");
  }

  Series truncated(int n) const {
    if (n >= order()) {
      Series r = *this;
      while (r.order() < n) r.c_.push_back(Scalar::zero(mode_));
      return r;
    }
    Series r(mode_, n);
    for (int i = 0; i <= n; ++i) r.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.mode_ == b.mode_ && a.c_ == b.c_;
  }

 private:
  static void check_order(int order) {
    if (order < 0 || order > kMaxOrder)
      throw BadRange("truncation order must be in [0, " + std::to_string(kMaxOrder) + "]");
  }

  Mode mode_;
  std::vector<Scalar> c_;
};

inline Series series_add(const Series& f, const Series& g) {
  int n = std::min(f.order(), g.order());
  Series r(f.mode(), n);
  for (int i = 0; i <= n; ++i) r.set_coeff(i, f.coeff(i) + g.coeff(i));
  return r;
}

inline Series series_scale(const Scalar& a, const Series& f) {
  Series r(f.mode(), f.order());
  for (int i = 0; i <= f.order(); ++i) r.set_coeff(i, a * f.coeff(i));
  return r;
}

inline Series series_mul(const Series& f, const Series& g, int order) {
  Series r(f.mode(), order);
  for (int i = 0; i <= std::min(order, f.order()); ++i) {
    if (f.coeff(i).is_zero()) continue;
    for (int j = 0; j <= std::min(order - i, g.order()); ++j)
      r.set_coeff(i + j, r.coeff(i + j) + f.coeff(i) * g.coeff(j));
  }
  return r;
}

inline Series series_pow(const Series& f, int k, int order) {
  if (k < 0) throw NegativeExponent("series_pow expects k >= 0");
  Series r(f.mode(), order);
  r.set_coeff(0, Scalar::one(f.mode()));
  for (int i = 0; i < k; ++i) r = series_mul(r, f, order);
  return r;
}

// f(g(x)) through the requested order; requires g(0) = 0.
inline Series compose(const Series& f, const Series& g, int order) {
  if (f.mode() != g.mode()) throw ModeMismatch("compose needs matching modes");
  if (!g.coeff(0).is_zero())
    throw ConstantTermNonzero("inner series must have zero constant term");
  if (order > std::min(f.order(), g.order()))
    throw BadRange("compose order exceeds operand truncation");
  Series r(f.mode(), order);
  r.set_coeff(0, f.coeff(0));
  Series gk(f.mode(), order);  // g^k, built incrementally
  gk.set_coeff(0, Scalar::one(f.mode()));
  for (int k = 1; k <= order; ++k) {
    gk = series_mul(gk, g, order);
    if (f.coeff(k).is_zero()) continue;
    for (int n = k; n <= order; ++n)
      r.set_coeff(n, r.coeff(n) + f.coeff(k) * gk.coeff(n));
  }
  return r;
}

inline Series identity_series(Mode m, int order) {
  Series x(m, order);
  if (order >= 1) x.set_coeff(1, Scalar::one(m));
  return x;
}

// Compositional inverse: g with f(g(x)) = g(f(x)) = x through the order.
// Solved order by order; each unknown coefficient enters linearly.
inline Series comp_inverse(const Series& f, int order) {
  f.require_invertible();
  if (order > f.order()) throw BadRange("inverse order exceeds truncation");
  Mode m = f.mode();
  Series g(m, order);
  if (order == 0) return g;
  g.set_coeff(1, Scalar::one(m) / f.coeff(1));
  for (int n = 2; n <= order; ++n) {
    Series h = compose(f.truncated(n), g.truncated(n), n);
    g.set_coeff(n, -h.coeff(n) / f.coeff(1));
  }
  return g;
}

// Polynomial-style evaluation of the truncated series at a point.
inline Scalar series_eval(const Series& f, const Scalar& x) {
  Scalar acc = Scalar::zero(f.mode());
  for (int n = f.order(); n >= 0; --n) acc = acc * x + f.coeff(n);
  return acc;
}

// g(x) = f(x + a) - a, moving the fixed point a of f to the origin.
// The caller recovers f^n(x) = g^n(x - a) + a.
inline Series shift_fixed_point(const Series& f, const Scalar& a, int order) {
  if (a.mode() != f.mode()) throw ModeMismatch("shift value mode mismatch");
  if (order > f.order()) throw BadRange("shift order exceeds truncation");
  Mode m = f.mode();
  // x + a is not a zero-constant series, so expand binomially by hand.
  Series g(m, order);
  std::vector<Scalar> apow(static_cast<std::size_t>(f.order()) + 1, Scalar::one(m));
  for (std::size_t i = 1; i < apow.size(); ++i) apow[i] = apow[i - 1] * a;
  std::vector<std::vector<BigInt>> binom(static_cast<std::size_t>(f.order()) + 1);
  for (std::size_t n = 0; n < binom.size(); ++n) {
    binom[n].assign(n + 1, BigInt(1));
    for (std::size_t k = 1; k < n; ++k)
      binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }
  for (int n = 0; n <= f.order(); ++n) {
    if (f.coeff(n).is_zero()) continue;
    for (int k = 0; k <= std::min(n, order); ++k) {
      Scalar term = f.coeff(n) * Scalar::integer(binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)], m) *
                    apow[static_cast<std::size_t>(n - k)];
      g.set_coeff(k, g.coeff(k) + term);
    }
  }
  // Constant term of f(x + a) is f(a); the fixed-point condition makes it a.
  if (g.coeff(0) != a) throw NotFixedPoint("f(a) != a through the truncation");
  g.set_coeff(0, Scalar::zero(m));
  if (order >= 1 && g.coeff(1).is_zero())
    throw DerivativeZero("f'(a) = 0; shifted series is not invertible");
  return g;
}

inline BigInt factorial(int n) {
  static std::vector<BigInt> table{BigInt(1)};
  while (static_cast<int>(table.size()) <= n)
    table.push_back(table.back() * static_cast<long>(table.size()));
  return table[static_cast<std::size_t>(n)];
}

enum class CoeffDirection { ord_to_exp, exp_to_ord };

// a_n = n! q_n (ord_to_exp) or q_n = a_n / n! (exp_to_ord).
inline std::vector<Scalar> exp_ord_convert(const std::vector<Scalar>& coeffs,
                                           CoeffDirection dir) {
  std::vector<Scalar> out;
  out.reserve(coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    Scalar fac = Scalar::integer(factorial(static_cast<int>(n)), coeffs[n].mode());
    out.push_back(dir == CoeffDirection::ord_to_exp ? coeffs[n] * fac
                                                    : coeffs[n] / fac);
  }
  return out;
}

// Exponential coefficient a_n = n! c_n of a series.
inline Scalar exp_coeff(const Series& f, int n) {
  return f.coeff(n) * Scalar::integer(factorial(n), f.mode());
}

}  // namespace iterfrac

#endif  // ITERFRAC_SERIES_HPP
