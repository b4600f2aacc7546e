#ifndef ITERFRAC_BELL_HPP
#define ITERFRAC_BELL_HPP

#include <cassert>
#include <map>
#include <utility>
#include <vector>

#include "iterfrac/series.hpp"

namespace iterfrac {

// Finitely supported multi-index (l_1, l_2, ...) of nonnegative integers,
// with the two linear forms |l| = sum l_p and <l> = sum p*l_p.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<long> parts) : parts_(std::move(parts)) { trim(); }

  static MultiIndex zero() { return MultiIndex(); }

  long at(int p) const {  // l_p, 1-based; zero outside the support
    if (p < 1 || p > static_cast<int>(parts_.size())) return 0;
    return parts_[static_cast<std::size_t>(p - 1)];
  }
  int max_part() const { return static_cast<int>(parts_.size()); }

  long weight() const {  // |l|
    long s = 0;
    for (long v : parts_) s += v;
    return s;
  }
  long degree() const {  // <l>
    long s = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i)
      s += static_cast<long>(i + 1) * parts_[i];
    return s;
  }

  MultiIndex plus(const MultiIndex& o) const {
    std::vector<long> p(std::max(parts_.size(), o.parts_.size()), 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = at(static_cast<int>(i + 1)) + o.at(static_cast<int>(i + 1));
    return MultiIndex(std::move(p));
  }

  // Componentwise difference; all entries must stay nonnegative.
  MultiIndex minus(const MultiIndex& o) const {
    std::vector<long> p(parts_.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      long v = at(static_cast<int>(i + 1)) - o.at(static_cast<int>(i + 1));
      if (v < 0) throw BadRange("multi-index difference is negative");
      p[i] = v;
    }
    return MultiIndex(std::move(p));
  }

  const std::vector<long>& parts() const { return parts_; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return a.parts_ < b.parts_;  // lexicographic on (l_1, l_2, ...)
  }

 private:
  void trim() {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (long v : parts_)
      if (v < 0) throw BadRange("multi-index entries must be nonnegative");
  }
  std::vector<long> parts_;
};

// |P_{n,m}|, memoized.
inline long count_partitions(int n, int m) {
  if (n < 0 || m < 0) return 0;
  static std::map<std::pair<int, int>, long> memo;
  if (m == 0) return 1;
  if (n == 0) return 0;
  auto it = memo.find({n, m});
  if (it != memo.end()) return it->second;
  long total = 0;
  // split on l_n = 0 vs l_n >= 1
  total += count_partitions(n - 1, m);
  if (m >= n) total += count_partitions(n, m - n);
  memo[{n, m}] = total;
  return total;
}

namespace detail {

inline void enumerate_rec(int m, int p, int max_part, std::vector<long>& acc,
                          std::vector<MultiIndex>& out) {
  if (p > max_part) {
    if (m == 0) out.push_back(MultiIndex(acc));
    return;
  }
  if (m == 0) {
    out.push_back(MultiIndex(acc));
    return;
  }
  // remaining positions are p..max_part; l_p ranges ascending for lex order
  for (long lp = 0; lp * p <= m; ++lp) {
    acc[static_cast<std::size_t>(p - 1)] = lp;
    enumerate_rec(m - static_cast<int>(lp) * p, p + 1, max_part, acc, out);
  }
  acc[static_cast<std::size_t>(p - 1)] = 0;
}

}  // namespace detail

// P_{n,m}: all multi-indices with 1*l_1 + ... + n*l_n = m and l_p = 0 for
// p > n, in lexicographic order of (l_1, l_2, ...).
inline std::vector<MultiIndex> enumerate_partitions(int n, int m) {
  if (n < 0 || m < 0) throw BadRange("enumerate_partitions needs n, m >= 0");
  std::vector<MultiIndex> out;
  if (m == 0) {
    out.push_back(MultiIndex::zero());
    return out;
  }
  if (n == 0) return out;
  std::vector<long> acc(static_cast<std::size_t>(n), 0);
  detail::enumerate_rec(m, 1, n, acc, out);
  return out;
}

// Partitions of degree n with prescribed weight k (the inner index set of
// the partial Bell polynomials).
inline std::vector<MultiIndex> enumerate_partitions_weighted(int n, int k) {
  std::vector<MultiIndex> out;
  for (MultiIndex& l : enumerate_partitions(n, n))
    if (l.weight() == k) out.push_back(std::move(l));
  return out;
}

inline BigInt multinomial(long k, const std::vector<long>& parts) {
  BigInt r = factorial(static_cast<int>(k));
  long used = 0;
  for (long p : parts) {
    if (p < 0) return BigInt(0);
    r /= factorial(static_cast<int>(p));
    used += p;
  }
  if (used != k) throw BadRange("multinomial parts must sum to k");
  return r;
}

// k! / (prod_p l_p! * (k - |l|)!), zero when |l| > k.
inline BigInt multinomial_with_rest(long k, const MultiIndex& l) {
  long rest = k - l.weight();
  if (rest < 0) return BigInt(0);
  BigInt r = factorial(static_cast<int>(k));
  for (long v : l.parts()) r /= factorial(static_cast<int>(v));
  r /= factorial(static_cast<int>(rest));
  return r;
}

// Exponential partial Bell polynomial B_{n,k}(a_1, ..., a_{n-k+1}), by the
// explicit sum over partitions of n into k parts.
inline Scalar partial_bell_exp(int n, int k, const std::vector<Scalar>& a) {
  if (k < 1 || k > n) throw BadRange("partial_bell needs 1 <= k <= n");
  if (static_cast<int>(a.size()) < n - k + 1)
    throw BadRange("need at least n-k+1 arguments");
  Mode m = a.front().mode();
  Scalar sum = Scalar::zero(m);
  for (const MultiIndex& l : enumerate_partitions_weighted(n, k)) {
    Rational coeff(factorial(n));
    Scalar mono = Scalar::one(m);
    for (int p = 1; p <= l.max_part(); ++p) {
      long lp = l.at(p);
      if (lp == 0) continue;
      coeff /= Rational(int_pow(factorial(p), static_cast<unsigned long>(lp)) *
                        factorial(static_cast<int>(lp)));
      for (long i = 0; i < lp; ++i) mono *= a[static_cast<std::size_t>(p - 1)];
    }
    sum += Scalar::rational(coeff, m) * mono;
  }
  return sum;
}

// Ordinary partial Bell polynomial B^_{n,k}(q_1, ..., q_{n-k+1}), by the
// multinomial-coefficient sum.
inline Scalar partial_bell_ord(int n, int k, const std::vector<Scalar>& qc) {
  if (k < 1 || k > n) throw BadRange("partial_bell needs 1 <= k <= n");
  if (static_cast<int>(qc.size()) < n - k + 1)
    throw BadRange("need at least n-k+1 arguments");
  Mode m = qc.front().mode();
  Scalar sum = Scalar::zero(m);
  for (const MultiIndex& l : enumerate_partitions_weighted(n, k)) {
    std::vector<long> parts = l.parts();
    Scalar mono = Scalar::one(m);
    for (int p = 1; p <= l.max_part(); ++p)
      for (long i = 0; i < l.at(p); ++i) mono *= qc[static_cast<std::size_t>(p - 1)];
    sum += Scalar::integer(multinomial(k, parts), m) * mono;
  }
  return sum;
}

// Complete homogeneous symmetric polynomial h_k(x_1, ..., x_n), by the
// one-variable-at-a-time recurrence.
inline Scalar homogeneous_sym(int k, const std::vector<Scalar>& xs) {
  if (k < 0) throw BadRange("homogeneous_sym needs k >= 0");
  Mode m = xs.empty() ? Mode::exact : xs.front().mode();
  if (k == 0) return Scalar::one(m);
  if (xs.empty()) return Scalar::zero(m);
  std::vector<Scalar> h(static_cast<std::size_t>(k) + 1, Scalar::zero(m));
  h[0] = Scalar::one(m);
  for (const Scalar& x : xs)
    for (int d = 1; d <= k; ++d)
      h[static_cast<std::size_t>(d)] += x * h[static_cast<std::size_t>(d - 1)];
  return h[static_cast<std::size_t>(k)];
}

// n-Bell partition polynomial: a coefficient map over P_n. Exact zeros are
// dropped from the map.
struct BPP {
  int degree = 0;
  Mode mode = Mode::exact;
  std::map<MultiIndex, Scalar> coeff;

  static BPP constant(const Scalar& c) {
    BPP p;
    p.mode = c.mode();
    if (!c.is_zero()) p.coeff.emplace(MultiIndex::zero(), c);
    return p;
  }

  void add_term(const MultiIndex& l, const Scalar& c) {
    if (l.degree() != degree) throw BadRange("BPP term outside P_n");
    if (c.is_zero()) return;
    auto [it, fresh] = coeff.emplace(l, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeff.erase(it);
    }
  }
};

// Multivariate Cauchy product of an n-BPP and an m-BPP, an (n+m)-BPP.
inline BPP bpp_product(const BPP& a, const BPP& b) {
  BPP r;
  r.degree = a.degree + b.degree;
  r.mode = a.mode;
  for (const auto& [la, ca] : a.coeff)
    for (const auto& [lb, cb] : b.coeff) r.add_term(la.plus(lb), ca * cb);
  return r;
}

// Evaluate at x_1 = xs[0], x_2 = xs[1], ...
inline Scalar bpp_evaluate(const BPP& p, const std::vector<Scalar>& xs) {
  Scalar sum = Scalar::zero(p.mode);
  for (const auto& [l, c] : p.coeff) {
    Scalar mono = c;
    for (int q = 1; q <= l.max_part(); ++q) {
      if (static_cast<int>(xs.size()) < q) throw BadRange("too few variables");
      for (long i = 0; i < l.at(q); ++i) mono *= xs[static_cast<std::size_t>(q - 1)];
    }
    sum += mono;
  }
  return sum;
}

// B^_{n,k}(q_1, x_1, ..., x_{n-k}) as an (n-k)-BPP in the shifted variables
// x_p = q_{p+1}, with the q_1-power folded into the coefficients:
// coefficient(lambda) = multinomial(k; lambda, k - |lambda|) q_1^{k-|lambda|}.
inline BPP partial_bell_as_bpp(int n, int k, const Scalar& q1) {
  if (k < 1 || k > n) throw BadRange("partial_bell_as_bpp needs 1 <= k <= n");
  BPP r;
  r.degree = n - k;
  r.mode = q1.mode();
  for (const MultiIndex& lam : enumerate_partitions(n - k, n - k)) {
    BigInt c = multinomial_with_rest(k, lam);
    if (c.is_zero()) continue;
    assert(lam.weight() <= k);
    Scalar coeff = Scalar::integer(c, r.mode);
    long e = k - lam.weight();
    if (e > 0) {
      if (q1.is_zero()) continue;
      coeff *= scalar_pow(q1, Exponent::of_int(e));
    }
    r.add_term(lam, coeff);
  }
  return r;
}

}  // namespace iterfrac

#endif  // ITERFRAC_BELL_HPP
