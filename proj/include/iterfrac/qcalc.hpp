#ifndef ITERFRAC_QCALC_HPP
#define ITERFRAC_QCALC_HPP

#include <map>
#include <utility>
#include <vector>

#include "iterfrac/series.hpp"

namespace iterfrac {

// Evaluation context for the q-analogs: holds q, memoizes its integer
// powers and the q-factorials. Per computation, not shared mutably.
class QContext {
 public:
  explicit QContext(Scalar q) : q_(std::move(q)) {
    if (q_.is_zero()) throw ZeroBase("q must be nonzero");
    q_is_one_ = q_.is_one();
  }

  const Scalar& q() const { return q_; }
  Mode mode() const { return q_.mode(); }
  bool q_is_one() const { return q_is_one_; }

  const Scalar& qpow(long long e) const {
    auto it = pow_memo_.find(e);
    if (it != pow_memo_.end()) return it->second;
    return pow_memo_.emplace(e, scalar_pow(q_, Exponent::of_int(e))).first->second;
  }

  // [n]_q for integer n.
  Scalar qnum(long long n) const {
    if (q_is_one_) return Scalar::integer(n, mode());
    Scalar one = Scalar::one(mode());
    return (qpow(n) - one) / (q_ - one);
  }

  // [s]_q for a general exponent.
  Scalar qnum(const Exponent& s) const { return q_number(s, q_); }

  // [n]_q! = [n]_q [n-1]_q ... [1]_q; throws QDegenerate when q is a root
  // of unity of order <= n (some [p]_q vanishes).
  Scalar qfactorial(int n) const {
    if (n < 0) throw BadRange("q-factorial needs n >= 0");
    if (fact_memo_.empty()) fact_memo_.push_back(Scalar::one(mode()));
    while (static_cast<int>(fact_memo_.size()) <= n) {
      long long p = static_cast<long long>(fact_memo_.size());
      Scalar qp = qnum(p);
      if (qp.is_zero())
        throw QDegenerate("[" + std::to_string(p) + "]_q = 0: q is a root of unity");
      fact_memo_.push_back(fact_memo_.back() * qp);
    }
    return fact_memo_[static_cast<std::size_t>(n)];
  }

 private:
  Scalar q_;
  bool q_is_one_;
  mutable std::map<long long, Scalar> pow_memo_;
  mutable std::vector<Scalar> fact_memo_;
};

inline Scalar q_factorial(int n, const QContext& ctx) { return ctx.qfactorial(n); }

// Gaussian binomial with arbitrary upper argument:
//   qbinom(s, p) = [s]_q [s-1]_q ... [s-p+1]_q / [p]_q!.
// Reduces to the generalized binomial coefficient at q = 1; vanishes for
// integer 0 <= s < p.
inline Scalar q_binomial(const Exponent& s, int p, const QContext& ctx) {
  if (p < 0) throw BadRange("q-binomial needs p >= 0");
  Scalar num = Scalar::one(ctx.mode());
  for (int l = 0; l < p; ++l) {
    num *= ctx.qnum(s - l);
    if (num.is_zero()) break;
  }
  if (num.is_zero()) {
    ctx.qfactorial(p);  // still reject degenerate q
    return num;
  }
  return num / ctx.qfactorial(p);
}

inline Scalar q_binomial(long long n, int p, const QContext& ctx) {
  return q_binomial(Exponent::of_int(n), p, ctx);
}

// Coefficients of (x, y)_q^n = prod_{i<n} (x + y q^i): entry l is the
// coefficient of y^l x^{n-l}, namely qbinom(n, l) q^binom(l, 2).
inline std::vector<Scalar> gauss_expand(int n, const QContext& ctx) {
  if (n < 0) throw BadRange("gauss_expand needs n >= 0");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int l = 0; l <= n; ++l) {
    long long tri = static_cast<long long>(l) * (l - 1) / 2;
    out.push_back(q_binomial(static_cast<long long>(n), l, ctx) * ctx.qpow(tri));
  }
  return out;
}

// D_q f: c_n maps to [n]_q c_n at degree n-1. At q = 1 this is the
// ordinary derivative.
inline Series q_derivative(const Series& f, const QContext& ctx) {
  if (f.mode() != ctx.mode()) throw ModeMismatch("q_derivative mode mismatch");
  int n = f.order();
  Series r(f.mode(), n == 0 ? 0 : n - 1);
  for (int d = 1; d <= n; ++d)
    r.set_coeff(d - 1, ctx.qnum(static_cast<long long>(d)) * f.coeff(d));
  return r;
}

// Closed form of the alternating Gauss sum
//   sum_{p=0}^{b} qbinom(a, p) q^binom(p,2) (-1)^p = qbinom(b-a, b) q^{ba}.
// The left side is evaluated independently by the tests.
inline Scalar alt_sum_identity(const Exponent& a, int b, const QContext& ctx) {
  if (b < 0) throw BadRange("alt_sum_identity needs b >= 0");
  Scalar rhs = q_binomial(rsub(b, a), b, ctx);
  if (rhs.is_zero()) return rhs;
  return rhs * scalar_pow(ctx.q(), a * b);
}

// Closed form of the q-hockey-stick sum
//   sum_{p=l}^{n-1} qbinom(p-1, l-1) q^{-l p} = qbinom(n-1, l) q^{-l(n-1)}.
inline Scalar hockey_stick(int n, int l, const QContext& ctx) {
  if (l < 1 || l > n - 1) throw BadRange("hockey_stick needs 1 <= l <= n-1");
  return q_binomial(static_cast<long long>(n - 1), l, ctx) *
         ctx.qpow(-static_cast<long long>(l) * (n - 1));
}

}  // namespace iterfrac

#endif  // ITERFRAC_QCALC_HPP
