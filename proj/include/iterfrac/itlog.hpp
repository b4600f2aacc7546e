#ifndef ITERFRAC_ITLOG_HPP
#define ITERFRAC_ITLOG_HPP

#include <utility>
#include <vector>

#include "iterfrac/iterate.hpp"

namespace iterfrac {

enum class ItlogForm { pochhammer, discrete, classical };

inline const char* itlog_form_name(ItlogForm f) {
  switch (f) {
    case ItlogForm::pochhammer: return "pochhammer";
    case ItlogForm::discrete: return "discrete";
    case ItlogForm::classical: return "classical";
  }
  return "?";
}

inline ItlogForm itlog_form_from_name(const std::string& name) {
  for (ItlogForm f : {ItlogForm::pochhammer, ItlogForm::discrete, ItlogForm::classical})
    if (name == itlog_form_name(f)) return f;
  throw ParseError("unknown itlog form '" + name + "'");
}

// itlog(f) = d/ds f^s at s = 0, in exponential-coefficient convention.
// Every term carries the common factor log q; in exact mode with q != 1
// that transcendental multiplier stays symbolic and `body` is exact.
struct ItlogResult {
  Scalar q;                   // f'(0)
  bool logq_symbolic = false; // exact mode, q != 1: multiplier is log(q), unevaluated
  Scalar multiplier;          // 1 when q = 1; log(q) evaluated in numeric mode
  std::vector<Scalar> body;   // exponential coefficients of itlog(f)/multiplier

  // itlog exponential coefficient n with the multiplier folded in.
  Scalar value(int n) const {
    if (logq_symbolic)
      throw ExactInfeasible("log q is symbolic in exact mode; use numeric mode");
    return multiplier * body[static_cast<std::size_t>(n)];
  }

  std::vector<Scalar> values() const {
    std::vector<Scalar> out;
    out.reserve(body.size());
    for (int n = 0; n < static_cast<int>(body.size()); ++n) out.push_back(value(n));
    return out;
  }

  int order_index() const {  // index of the first nonzero coefficient
    for (std::size_t n = 0; n < body.size(); ++n)
      if (!body[n].is_zero()) return static_cast<int>(n);
    return -1;
  }
};

// Exponential coefficients of itlog(f) through the requested order.
// Pochhammer uses [n 1]_{(phi,-q)_q^p}; discrete uses [n 1]_{phi^p} with the
// q-hockey-stick closed form; both reduce to the classical sums at q = 1.
inline ItlogResult itlog(const Series& f, int size, ItlogForm form) {
  f.require_invertible();
  if (size > f.order()) throw BadRange("itlog order exceeds series truncation");
  Mode m = f.mode();
  Scalar q = f.q();
  bool unitary = is_unitary_q(q);
  if (form == ItlogForm::classical && !unitary)
    throw UnitaryRequired("classical itlog needs f'(0) = 1");
  if (unitary) form = ItlogForm::classical;  // the q -> 1 limit of both forms

  if (detail::needs_guard(f)) {
    ItlogResult high;
    {
      PrecisionScope scope(Precision::bits() +
                           detail::cancellation_guard_bits(q, Exponent::of_int(1), size));
      detail::GuardFlag flag;
      high = itlog(detail::raise_series(f), size, form);
    }
    high.q = reround(high.q);
    high.multiplier = reround(high.multiplier);
    for (Scalar& c : high.body) c = reround(c);
    return high;
  }

  ItlogResult res;
  res.q = q;
  res.body.assign(static_cast<std::size_t>(size) + 1, Scalar::zero(m));

  CoeffTriangle phi = phi_triangle(f, size);
  QContext ctx(q);

  if (form == ItlogForm::classical) {
    res.logq_symbolic = false;
    res.multiplier = Scalar::one(m);
    std::vector<CoeffTriangle> powers = triangle_powers(phi, size - 1 >= 0 ? size - 1 : 0);
    for (int n = 2; n <= size; ++n) {
      Scalar sum = Scalar::zero(m);
      for (int p = 1; p <= n - 1; ++p) {
        // (-1)^{p-1}/p binom(n-1, p) [n 1]_{phi^p}
        Scalar w = Scalar::rational(
            Rational((p % 2 ? 1 : -1) * factorial(n - 1),
                     BigInt(p) * factorial(p) * factorial(n - 1 - p)),
            m);
        sum += w * powers[static_cast<std::size_t>(p)].at(n, 1);
      }
      res.body[static_cast<std::size_t>(n)] = sum;
    }
    return res;
  }

  // nonunitary: itlog(f) = x log q + log(q)/(q-1) sum_{n>=2} x^n/n! (inner sums)
  res.logq_symbolic = (m == Mode::exact);
  res.multiplier = m == Mode::exact ? Scalar::one(m) : Scalar::numeric(clog(q.cplx()));
  if (size >= 1) res.body[1] = Scalar::one(m);
  Scalar qm1 = q - Scalar::one(m);
  std::vector<CoeffTriangle> powers;
  if (form == ItlogForm::discrete)
    powers = triangle_powers(phi, size - 1 >= 0 ? size - 1 : 0);
  else
    powers = pochhammer_triangles(phi, ctx, 1, size - 1 >= 0 ? size - 1 : 0);
  for (int n = 2; n <= size; ++n) {
    Scalar sum = Scalar::zero(m);
    for (int p = 1; p <= n - 1; ++p) {
      Scalar qp = ctx.qnum(static_cast<long long>(p));
      if (qp.is_zero()) throw QDegenerate("[p]_q = 0 in itlog sum");
      Scalar sign = Scalar::integer(p % 2 ? 1 : -1, m);
      if (form == ItlogForm::pochhammer) {
        long long tri = static_cast<long long>(p + 1) * p / 2;
        sum += sign / qp * ctx.qpow(-tri) * powers[static_cast<std::size_t>(p)].at(n, 1);
      } else {
        long long tri = static_cast<long long>(p + 1) * p / 2 -
                        static_cast<long long>(p) * n;
        sum += sign / qp * q_binomial(static_cast<long long>(n - 1), p, ctx) *
               ctx.qpow(tri) * powers[static_cast<std::size_t>(p)].at(n, 1);
      }
    }
    res.body[static_cast<std::size_t>(n)] = sum / qm1;
  }
  return res;
}

// Max over n <= size of |itlog_n - (a_n(f^h) - a_n(f^0)) / h| for the
// finite-difference oracle; O(h) as h -> 0. Numeric mode only.
inline Real itlog_fd_check(const Series& f, const Scalar& h, int size) {
  if (f.mode() != Mode::numeric || h.mode() != Mode::numeric)
    throw ModeMismatch("finite-difference check needs numeric mode");
  ItlogForm form = is_unitary_q(f.q()) ? ItlogForm::classical : ItlogForm::pochhammer;
  ItlogResult il = itlog(f, size, form);
  CoeffTriangle th = iterate(f, Exponent::of_num(h.cplx()), size);
  Real worst(0);
  for (int n = 1; n <= size; ++n) {
    Scalar an = th.at(n, 1);                      // a_n(f^h)
    Scalar a0 = Scalar::integer(n == 1 ? 1 : 0, Mode::numeric);  // a_n(x)
    Scalar fd = (an - a0) / h;
    Real d = (il.value(n) - fd).abs();
    if (d > worst) worst = d;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Infinitesimal generator: phi^s = exp(s X itlog(f)(D)) with X the
// multiplication-by-x operator. Numeric mode (matrix exponential).
// ---------------------------------------------------------------------------

namespace detail {

using Matrix = std::vector<std::vector<Scalar>>;

inline Matrix mat_zero(int dim) {
  return Matrix(static_cast<std::size_t>(dim),
                std::vector<Scalar>(static_cast<std::size_t>(dim), Scalar::integer(0, Mode::numeric)));
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  int dim = static_cast<int>(a.size());
  Matrix r = mat_zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int l = 0; l < dim; ++l) {
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].is_zero()) continue;
      for (int j = 0; j < dim; ++j)
        r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
            b[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
    }
  return r;
}

inline Real mat_max_abs(const Matrix& a) {
  Real worst(0);
  for (const auto& row : a)
    for (const Scalar& v : row) {
      Real d = v.abs();
      if (d > worst) worst = d;
    }
  return worst;
}

}  // namespace detail

// Triangle of exp(s G) where G is the matrix of x itlog(f)(D) on x^0..x^N,
// by scaling and squaring. Must agree with the q-path iterates.
inline CoeffTriangle generator_exp(const Series& f, const Exponent& s, int size) {
  if (f.mode() != Mode::numeric)
    throw ModeMismatch("generator exponential needs numeric mode");
  ItlogForm form = is_unitary_q(f.q()) ? ItlogForm::classical : ItlogForm::pochhammer;
  ItlogResult il = itlog(f, size, form);
  int dim = size + 1;
  // [n k]_G = c_{n-k+1} n! / ((n-k+1)! (k-1)!) for 1 <= k <= n, with c the
  // exponential coefficients of itlog(f); column 0 is zero.
  detail::Matrix g = detail::mat_zero(dim);
  for (int n = 1; n <= size; ++n)
    for (int k = 1; k <= n; ++k) {
      int mm = n - k + 1;
      Scalar c = il.value(mm);
      if (c.is_zero()) continue;
      Scalar w = Scalar::rational(
          Rational(factorial(n), factorial(mm) * factorial(k - 1)), Mode::numeric);
      g[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = c * w;
    }
  Scalar sc = s.to_scalar(Mode::numeric);
  detail::Matrix a = detail::mat_zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          sc * g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

  // scale so the Taylor series converges fast, then square back
  int squarings = 0;
  Real norm = detail::mat_max_abs(a);
  Scalar half = Scalar::numeric(Real("0.5"));
  while (norm > Real("0.25")) {
    for (auto& row : a)
      for (Scalar& v : row) v *= half;
    norm /= 2;
    ++squarings;
  }
  detail::Matrix result = detail::mat_zero(dim);
  for (int i = 0; i < dim; ++i)
    result[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar::one(Mode::numeric);
  detail::Matrix term = result;
  Real stop = Real("1e-" + std::to_string(Precision::digits_for(Precision::bits()) + 12));
  for (int t = 1; t <= 220; ++t) {
    term = detail::mat_mul(term, a);
    Scalar inv_t = Scalar::one(Mode::numeric) / Scalar::integer(t, Mode::numeric);
    for (auto& row : term)
      for (Scalar& v : row) v *= inv_t;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        result[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            term[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (detail::mat_max_abs(term) < stop) break;
  }
  for (int i = 0; i < squarings; ++i) result = detail::mat_mul(result, result);

  CoeffTriangle out(Mode::numeric, size);
  for (int n = 0; n <= size; ++n)
    for (int k = 0; k <= n; ++k)
      out.at(n, k) = result[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  return out;
}

}  // namespace iterfrac

#endif  // ITERFRAC_ITLOG_HPP
