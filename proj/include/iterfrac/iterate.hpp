#ifndef ITERFRAC_ITERATE_HPP
#define ITERFRAC_ITERATE_HPP

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "iterfrac/triangle.hpp"

namespace iterfrac {

// Numeric-mode band inside which f'(0) is treated as 1; the q-binomial
// denominators lose all precision closer to 1 than this.
inline Real unitary_band() { return Real("1e-30"); }

inline bool is_unitary_q(const Scalar& q) {
  if (q.mode() == Mode::exact) return q.rat() == 1;
  return cabs(q.cplx() - Complex(1L)) < unitary_band();
}

// Generalized binomial coefficient binom(s, p) = s(s-1)...(s-p+1)/p!.
inline Scalar gen_binomial(const Exponent& s, int p, Mode m) {
  if (p < 0) throw BadRange("binomial needs p >= 0");
  Scalar num = Scalar::one(m);
  for (int l = 0; l < p; ++l) {
    num *= (s - l).to_scalar(m);
    if (num.is_zero()) return num;
  }
  return num / Scalar::integer(factorial(p), m);
}

// base^e for integer e, staying exact in exact mode.
inline Scalar scalar_ipow(const Scalar& base, long long e) {
  if (e == 0) return Scalar::one(base.mode());
  return scalar_pow(base, Exponent::of_int(e));
}

inline void require_unitary(const Series& f, const Exponent& s) {
  if (!is_unitary_q(f.q()))
    throw UnitaryRequired("formula needs f'(0) = 1");
  if (f.mode() == Mode::exact && s.kind() == Exponent::Kind::numeric)
    throw ExactInfeasible("numeric exponent needs a numeric-mode series");
}

inline void require_qpath_feasible(const Series& f, const Exponent& s) {
  if (f.mode() == Mode::exact && !exact_power_feasible(f.q(), s))
    throw ExactInfeasible("q^s not exact; use numeric mode or integer s");
}

namespace detail {

// The k = 0 column of every iterate triangle is e_0 (phi^s fixes 1).
inline void fill_trivial_column(CoeffTriangle& t) {
  t.at(0, 0) = Scalar::one(t.mode());
}

// The fractional expansions sum terms that grow roughly like |q|^{p n}
// while the result stays at coefficient scale, so numeric evaluation needs
// guard precision proportional to the cancelled magnitude.
inline unsigned cancellation_guard_bits(const Scalar& q, const Exponent& s, int size) {
  double l2q = 0;
  Real a = q.abs();
  if (!a.is_zero()) l2q = std::fabs(Real(log(a)).convert_to<double>()) / std::log(2.0);
  double smag = 1;
  switch (s.kind()) {
    case Exponent::Kind::integer:
      smag = std::fabs(static_cast<double>(s.as_int()));
      break;
    case Exponent::Kind::rational:
      smag = std::fabs(Rational(s.as_rational()).convert_to<double>());
      break;
    default:
      smag = cabs(s.as_complex()).convert_to<double>();
      break;
  }
  double n = size;
  double bits = n * n * l2q + 2 * n * std::log2(n + 2) + n * std::log2(2 + smag) + 96;
  if (bits > 16384) bits = 16384;
  return static_cast<unsigned>(bits);
}

inline thread_local bool guard_active = false;

struct GuardFlag {
  GuardFlag() { guard_active = true; }
  ~GuardFlag() { guard_active = false; }
};

inline Series raise_series(const Series& f) {
  Series g(Mode::numeric, f.order());
  for (int n = 0; n <= f.order(); ++n) g.set_coeff(n, reround(f.coeff(n)));
  return g;
}

inline Exponent raise_exponent(const Exponent& s) {
  if (s.kind() != Exponent::Kind::numeric) return s;
  return Exponent::of_num(reround(Complex(s.as_complex())));
}

// Runs `core` at raised precision and rounds the triangle back down.
template <typename Core>
CoeffTriangle with_cancellation_guard(const Series& f, const Exponent& s, int size,
                                      Core&& core) {
  CoeffTriangle high(Mode::numeric, size);
  {
    PrecisionScope scope(Precision::bits() + cancellation_guard_bits(f.q(), s, size));
    GuardFlag flag;
    high = core(raise_series(f), raise_exponent(s), size);
  }
  CoeffTriangle out(Mode::numeric, size);
  for (int n = 0; n <= size; ++n)
    for (int k = 0; k <= n; ++k) out.at(n, k) = reround(high.at(n, k));
  return out;
}

inline bool needs_guard(const Series& f) {
  return f.mode() == Mode::numeric && !guard_active;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Discrete formulas (s a nonnegative integer).
// ---------------------------------------------------------------------------

// s-th power of the generalized Jabotinsky matrix.
inline CoeffTriangle iterate_discrete_matrix(const Series& f, long s, int size) {
  if (s < 0) throw NegativeExponent("matrix formula needs s >= 0");
  return triangle_power(phi_triangle(f, size), s);
}

// Strict chains weighted by complete homogeneous symmetric polynomials in
// the powers q^{j_0}, ..., q^{j_p}.
inline CoeffTriangle iterate_monkam(const Series& f, long s, int size) {
  if (s < 0) throw NegativeExponent("Monkam's formula needs s >= 0");
  CoeffTriangle phi = phi_triangle(f, size);
  QContext ctx(f.q());
  Mode m = f.mode();
  CoeffTriangle t(m, size);
  detail::fill_trivial_column(t);
  std::vector<int> chain;
  for (int n = 1; n <= size; ++n)
    for (int k = 1; k <= n; ++k) {
      Scalar total = Scalar::zero(m);
      chain.assign(1, k);
      // DFS over strict chains k = j_0 < ... < j_p = n with p <= s
      std::function<void(const Scalar&)> walk = [&](const Scalar& prod) {
        int j = chain.back();
        int p = static_cast<int>(chain.size()) - 1;
        if (j == n) {
          std::vector<Scalar> xs;
          xs.reserve(chain.size());
          for (int ji : chain) xs.push_back(ctx.qpow(ji));
          total += homogeneous_sym(static_cast<int>(s) - p, xs) * prod;
          return;
        }
        if (p >= s || p >= n - k) return;
        for (int jn = j + 1; jn <= n; ++jn) {
          Scalar fac = prod * phi.at(jn, j);
          if (fac.is_zero()) continue;
          chain.push_back(jn);
          walk(fac);
          chain.pop_back();
        }
      };
      walk(Scalar::one(m));
      t.at(n, k) = total;
    }
  return t;
}

namespace detail {

// Enumerates all multi-indices ell with 0 <= ell_p <= rem_p componentwise.
inline void each_sub_index(const std::vector<long>& rem,
                           const std::function<void(const std::vector<long>&)>& fn) {
  std::vector<long> cur(rem.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == rem.size()) {
      fn(cur);
      return;
    }
    for (long v = 0; v <= rem[pos]; ++v) {
      cur[pos] = v;
      rec(pos + 1);
    }
    cur[pos] = 0;
  };
  rec(0);
}

}  // namespace detail

// Partition-polynomial formula: only the single partition set P_{n-k} is
// enumerated; the inner coefficient C(L) sums over ordered decompositions
// ell_1 + ... + ell_s = L.
inline CoeffTriangle iterate_bpp(const Series& f, long s, int size) {
  if (s < 0) throw NegativeExponent("partition formula needs s >= 0");
  Mode m = f.mode();
  if (s == 0) return CoeffTriangle::identity(m, size);
  f.require_invertible();
  if (size > f.order()) throw BadRange("triangle size exceeds series truncation");
  QContext ctx(f.q());
  CoeffTriangle t(m, size);
  detail::fill_trivial_column(t);
  for (int md = 0; md <= size - 1; ++md) {  // md = n - k
    std::vector<MultiIndex> parts = enumerate_partitions(md, md);
    // the monomial prod_p q_{p+1}^{L_p} is shared across k
    std::vector<Scalar> mono(parts.size(), Scalar::one(m));
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (int p = 1; p <= parts[i].max_part(); ++p)
        for (long r = 0; r < parts[i].at(p); ++r) mono[i] *= f.coeff(p + 1);
    for (int k = 1; k + md <= size; ++k) {
      int n = k + md;
      Scalar sum = Scalar::zero(m);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (mono[i].is_zero()) continue;
        const std::vector<long>& L = parts[i].parts();
        long weight_L = parts[i].weight();
        Scalar cL = Scalar::zero(m);
        // DFS over ell_1, ..., ell_{s-1}; the last part is the remainder.
        std::function<void(long, std::vector<long>&, long, long, const BigInt&)> rec =
            [&](long tpos, std::vector<long>& rem, long prefix_deg, long qexp,
                const BigInt& mult) {
              if (tpos == s) {
                MultiIndex last((std::vector<long>(rem)));
                BigInt mlast = multinomial_with_rest(prefix_deg + k, last);
                if (mlast.is_zero()) return;
                long e = qexp + s * k - weight_L;
                cL += Scalar::integer(mult * mlast, m) * ctx.qpow(e);
                return;
              }
              detail::each_sub_index(rem, [&](const std::vector<long>& ell) {
                MultiIndex l{std::vector<long>(ell)};
                BigInt mt = multinomial_with_rest(prefix_deg + k, l);
                if (mt.is_zero()) return;
                std::vector<long> next(rem.size());
                for (std::size_t pp = 0; pp < rem.size(); ++pp)
                  next[pp] = rem[pp] - ell[pp];
                long dl = l.degree();
                rec(tpos + 1, next, prefix_deg + dl, qexp + (s - tpos) * dl,
                    mult * mt);
              });
            };
        std::vector<long> rem(L);
        rec(1, rem, 0, 0, BigInt(1));
        sum += cL * mono[i];
      }
      t.at(n, k) = Scalar::rational(Rational(factorial(n), factorial(k)), m) * sum;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Unitary fractional formulas (f'(0) = 1, s arbitrary).
// ---------------------------------------------------------------------------

// binom(s, p)-weighted strict-chain expansion of phi^s = sum binom(s,p)(phi-1)^p.
inline CoeffTriangle iterate_schroder(const Series& f, const Exponent& s, int size) {
  require_unitary(f, s);
  if (detail::needs_guard(f))
    return detail::with_cancellation_guard(f, s, size,
        [](const Series& a, const Exponent& b, int c) { return iterate_schroder(a, b, c); });
  CoeffTriangle phi = phi_triangle(f, size);
  Mode m = f.mode();
  std::vector<Scalar> binom;  // binom(s, p), p = 0..size
  for (int p = 0; p <= size; ++p) binom.push_back(gen_binomial(s, p, m));
  // powers of phi - 1; the strict-chain form of their coefficients backs
  // the cancellation tests
  CoeffTriangle phim1 = phi;
  Scalar one = Scalar::one(m);
  for (int n = 0; n <= size; ++n) phim1.at(n, n) -= one;
  std::vector<CoeffTriangle> pw = triangle_powers(phim1, size);
  CoeffTriangle t(m, size);
  detail::fill_trivial_column(t);
  for (int n = 1; n <= size; ++n)
    for (int k = 1; k <= n; ++k) {
      Scalar total = Scalar::zero(m);
      for (int p = 0; p <= n - k; ++p) {
        const Scalar& coeff = pw[static_cast<std::size_t>(p)].at(n, k);
        if (!coeff.is_zero()) total += binom[static_cast<std::size_t>(p)] * coeff;
      }
      t.at(n, k) = total;
    }
  return t;
}

enum class JabotinskyVariant { standard, alternating, extracted };

// phi^s through the discrete powers phi^p:
//   standard:   sum_p [n k]_{phi^p} binom(s,p) binom(n-k-s, n-k-p)
//   alternating: binom(s-1-p, n-k-p)(-1)^{n-k-p} in place of the second factor
//   extracted:  binom(s,m) sum_p [n k]_{phi^p} binom(m,p) (s-m)/(s-p) (-1)^{m-p}
inline CoeffTriangle iterate_jabotinsky(const Series& f, const Exponent& s, int size,
                                        JabotinskyVariant variant = JabotinskyVariant::standard) {
  require_unitary(f, s);
  if (detail::needs_guard(f))
    return detail::with_cancellation_guard(f, s, size,
        [variant](const Series& a, const Exponent& b, int c) {
          return iterate_jabotinsky(a, b, c, variant);
        });
  Mode m = f.mode();
  std::vector<CoeffTriangle> powers = triangle_powers(phi_triangle(f, size), size);
  std::vector<Scalar> binom_s;
  for (int p = 0; p <= size; ++p) binom_s.push_back(gen_binomial(s, p, m));
  CoeffTriangle t(m, size);
  detail::fill_trivial_column(t);
  Scalar s_scalar = s.to_scalar(m);
  for (int n = 1; n <= size; ++n)
    for (int k = 1; k <= n; ++k) {
      int md = n - k;
      Scalar total = Scalar::zero(m);
      if (variant == JabotinskyVariant::extracted) {
        // every denominator s - p, p = 0..md, must be nonzero
        for (int p = 0; p <= md; ++p)
          if ((s_scalar - Scalar::integer(p, m)).is_zero())
            throw ExtractedPole("extracted form has pole at integer s = " + std::to_string(p));
        for (int p = 0; p <= md; ++p) {
          const Scalar& base = powers[static_cast<std::size_t>(p)].at(n, k);
          if (base.is_zero()) continue;
          Scalar factor = Scalar::integer(multinomial(md, {static_cast<long>(p), static_cast<long>(md - p)}), m);
          if (p < md) {
            factor *= (s_scalar - Scalar::integer(md, m)) / (s_scalar - Scalar::integer(p, m));
            if ((md - p) % 2 != 0) factor = -factor;
          }
          total += base * factor;
        }
        total *= binom_s[static_cast<std::size_t>(md)];
      } else {
        for (int p = 0; p <= md; ++p) {
          const Scalar& base = powers[static_cast<std::size_t>(p)].at(n, k);
          if (base.is_zero()) continue;
          Scalar w = binom_s[static_cast<std::size_t>(p)];
          if (variant == JabotinskyVariant::standard) {
            w *= gen_binomial(rsub(md, s), md - p, m);
          } else {
            w *= gen_binomial(s - (p + 1), md - p, m);
            if ((md - p) % 2 != 0) w = -w;
          }
          total += base * w;
        }
      }
      t.at(n, k) = total;
    }
  return t;
}

// ---------------------------------------------------------------------------
// Nonunitary fractional formulas (general f'(0) = q, s arbitrary).
// ---------------------------------------------------------------------------

// q-analog of Schroder's expansion: phi^s = sum_p qbinom(s,p) q^{k(s-p)}
// (phi, -q^k)_q^p, with the q-Pochhammer coefficients from weak chains.
inline CoeffTriangle iterate_qschroder(const Series& f, const Exponent& s, int size) {
  require_qpath_feasible(f, s);
  if (detail::needs_guard(f))
    return detail::with_cancellation_guard(f, s, size,
        [](const Series& a, const Exponent& b, int c) { return iterate_qschroder(a, b, c); });
  Mode m = f.mode();
  CoeffTriangle phi = phi_triangle(f, size);
  QContext ctx(f.q());
  std::vector<Scalar> qbinom_s, qpow_s;  // qbinom(s,p) and q^{s-p}, p = 0..size
  for (int p = 0; p <= size; ++p) {
    qbinom_s.push_back(q_binomial(s, p, ctx));
    qpow_s.push_back(scalar_pow(ctx.q(), s - p));
  }
  CoeffTriangle t(m, size);
  detail::fill_trivial_column(t);
  for (int k = 1; k <= size; ++k) {
    std::vector<CoeffTriangle> poch = pochhammer_triangles(phi, ctx, k, size - k);
    for (int n = k; n <= size; ++n) {
      Scalar total = Scalar::zero(m);
      for (int p = 0; p <= n - k; ++p) {
        const Scalar& coeff = poch[static_cast<std::size_t>(p)].at(n, k);
        if (coeff.is_zero()) continue;
        total += qbinom_s[static_cast<std::size_t>(p)] *
                 scalar_ipow(qpow_s[static_cast<std::size_t>(p)], k) * coeff;
      }
      t.at(n, k) = total;
    }
  }
  return t;
}

enum class TambsVariant { standard, lavoie, qextracted };

// q-analog of Jabotinsky's expansion through discrete powers:
//   standard:   sum_p [n k]_{phi^p} qbinom(s,p) qbinom(n-k-s, n-k-p) q^{(n-p)(s-p)}
//   lavoie:     qbinom(s-p-1, n-k-p) q^{k(s-p) + binom(n-k-p+1, 2)} (-1)^{n-k-p}
//   qextracted: qbinom(s,m) sum_p [.]_{phi^p} qbinom(m,p)
//               ([s]_q - [m]_q)/([s]_q - [p]_q) q^{k(s-p) + binom(m-p,2)} (-1)^{m-p}
inline CoeffTriangle iterate_tambs(const Series& f, const Exponent& s, int size,
                                   TambsVariant variant = TambsVariant::standard) {
  require_qpath_feasible(f, s);
  if (detail::needs_guard(f))
    return detail::with_cancellation_guard(f, s, size,
        [variant](const Series& a, const Exponent& b, int c) {
          return iterate_tambs(a, b, c, variant);
        });
  Mode m = f.mode();
  std::vector<CoeffTriangle> powers = triangle_powers(phi_triangle(f, size), size);
  QContext ctx(f.q());
  std::vector<Scalar> qbinom_s, qpow_s;
  for (int p = 0; p <= size; ++p) {
    qbinom_s.push_back(q_binomial(s, p, ctx));
    qpow_s.push_back(scalar_pow(ctx.q(), s - p));
  }
  Scalar s_qnum = ctx.qnum(s);
  CoeffTriangle t(m, size);
  detail::fill_trivial_column(t);
  for (int n = 1; n <= size; ++n)
    for (int k = 1; k <= n; ++k) {
      int md = n - k;
      if (variant == TambsVariant::qextracted) {
        // every denominator [s]_q - [p]_q, p = 0..md, must be nonzero
        for (int p = 0; p <= md; ++p)
          if ((s_qnum - ctx.qnum(static_cast<long long>(p))).is_zero())
            throw ExtractedPole("q-extracted form has pole at [s]_q = [" +
                                std::to_string(p) + "]_q");
      }
      Scalar total = Scalar::zero(m);
      for (int p = 0; p <= md; ++p) {
        const Scalar& base = powers[static_cast<std::size_t>(p)].at(n, k);
        if (base.is_zero()) continue;
        Scalar w = qbinom_s[static_cast<std::size_t>(p)];
        const Scalar& qsp = qpow_s[static_cast<std::size_t>(p)];
        switch (variant) {
          case TambsVariant::standard:
            w *= q_binomial(rsub(md, s), md - p, ctx) * scalar_ipow(qsp, n - p);
            break;
          case TambsVariant::lavoie: {
            long long tri = static_cast<long long>(md - p + 1) * (md - p) / 2;
            w *= q_binomial(s - (p + 1), md - p, ctx) * scalar_ipow(qsp, k) * ctx.qpow(tri);
            if ((md - p) % 2 != 0) w = -w;
            break;
          }
          case TambsVariant::qextracted: {
            w = q_binomial(static_cast<long long>(md), p, ctx) * scalar_ipow(qsp, k);
            long long tri = static_cast<long long>(md - p) * (md - p - 1) / 2;
            w *= ctx.qpow(tri);
            if (p < md) {
              w *= (s_qnum - ctx.qnum(static_cast<long long>(md))) /
                   (s_qnum - ctx.qnum(static_cast<long long>(p)));
              if ((md - p) % 2 != 0) w = -w;
            }
            break;
          }
        }
        total += base * w;
      }
      if (variant == TambsVariant::qextracted)
        total *= qbinom_s[static_cast<std::size_t>(md)];
      t.at(n, k) = total;
    }
  return t;
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

enum class Method {
  auto_dispatch,
  matrix,
  monkam,
  bpp,
  schroder,
  jabotinsky,
  jabotinsky_alt,
  extracted,
  qschroder,
  tambs,
  lavoie,
  qextracted,
};

inline const char* method_name(Method m) {
  switch (m) {
    case Method::auto_dispatch: return "auto";
    case Method::matrix: return "matrix";
    case Method::monkam: return "monkam";
    case Method::bpp: return "bpp";
    case Method::schroder: return "schroder";
    case Method::jabotinsky: return "jabotinsky";
    case Method::jabotinsky_alt: return "jabotinsky-alt";
    case Method::extracted: return "extracted";
    case Method::qschroder: return "qschroder";
    case Method::tambs: return "tambs";
    case Method::lavoie: return "lavoie";
    case Method::qextracted: return "qextracted";
  }
  return "?";
}

inline Method method_from_name(const std::string& name) {
  for (Method m : {Method::auto_dispatch, Method::matrix, Method::monkam, Method::bpp,
                   Method::schroder, Method::jabotinsky, Method::jabotinsky_alt,
                   Method::extracted, Method::qschroder, Method::tambs, Method::lavoie,
                   Method::qextracted})
    if (name == method_name(m)) return m;
  throw ParseError("unknown method '" + name + "'");
}

inline long require_discrete(const Exponent& s) {
  if (!s.is_integer_kind())
    throw BadRange("method needs an integer exponent");
  long long v = s.as_int();
  if (v < 0) throw NegativeExponent("method needs s >= 0");
  return static_cast<long>(v);
}

struct IterateRequest {
  Series f;
  Exponent s;
  int order = Series::kDefaultOrder;
  Method method = Method::auto_dispatch;
};

inline CoeffTriangle iterate(const Series& f, const Exponent& s, int size, Method method);

inline CoeffTriangle iterate(const IterateRequest& req) {
  return iterate(req.f, req.s, req.order, req.method);
}

// Integer s defaults to the matrix power (negative via the compositional
// inverse); fractional s with q = 1 to Jabotinsky; otherwise Tambs.
inline CoeffTriangle iterate(const Series& f, const Exponent& s, int size,
                             Method method = Method::auto_dispatch) {
  if (method == Method::auto_dispatch) {
    if (s.is_integer_kind() ||
        (s.kind() == Exponent::Kind::rational && mp::denominator(s.as_rational()) == 1)) {
      long long si = s.is_integer_kind()
                         ? s.as_int()
                         : static_cast<long long>(mp::numerator(s.as_rational()));
      if (si >= 0) return iterate_discrete_matrix(f, static_cast<long>(si), size);
      return iterate_discrete_matrix(comp_inverse(f, f.order()), static_cast<long>(-si), size);
    }
    if (is_unitary_q(f.q())) return iterate_jabotinsky(f, s, size);
    return iterate_tambs(f, s, size);
  }
  switch (method) {
    case Method::matrix:
      return iterate_discrete_matrix(f, require_discrete(s), size);
    case Method::monkam:
      return iterate_monkam(f, require_discrete(s), size);
    case Method::bpp:
      return iterate_bpp(f, require_discrete(s), size);
    case Method::schroder:
      return iterate_schroder(f, s, size);
    case Method::jabotinsky:
      return iterate_jabotinsky(f, s, size, JabotinskyVariant::standard);
    case Method::jabotinsky_alt:
      return iterate_jabotinsky(f, s, size, JabotinskyVariant::alternating);
    case Method::extracted:
      return iterate_jabotinsky(f, s, size, JabotinskyVariant::extracted);
    case Method::qschroder:
      return iterate_qschroder(f, s, size);
    case Method::tambs:
      return iterate_tambs(f, s, size, TambsVariant::standard);
    case Method::lavoie:
      return iterate_tambs(f, s, size, TambsVariant::lavoie);
    case Method::qextracted:
      return iterate_tambs(f, s, size, TambsVariant::qextracted);
    default:
      throw BadRange("unhandled method");
  }
}

// ---------------------------------------------------------------------------
// Umbral application and basic sequences.
// ---------------------------------------------------------------------------

// phi^s x^n as a polynomial coefficient list (index = power of x).
inline std::vector<Scalar> umbral_apply(const Series& f, const Exponent& s, int n) {
  CoeffTriangle t = iterate(f, s, n);
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out.push_back(t.at(n, k));
  return out;
}

// Applies sum_j g_j D^j to a polynomial.
inline std::vector<Scalar> apply_series_in_d(const Series& g,
                                             const std::vector<Scalar>& poly) {
  Mode m = g.mode();
  int deg = static_cast<int>(poly.size()) - 1;
  std::vector<Scalar> out(poly.size(), Scalar::zero(m));
  for (int j = 0; j <= std::min(g.order(), deg); ++j) {
    if (g.coeff(j).is_zero()) continue;
    for (int i = 0; i + j <= deg; ++i) {
      // D^j x^{i+j} = (i+j)!/i! x^i
      Scalar fall = Scalar::rational(Rational(factorial(i + j), factorial(i)), m);
      out[static_cast<std::size_t>(i)] +=
          g.coeff(j) * fall * poly[static_cast<std::size_t>(i + j)];
    }
  }
  return out;
}

// Basic sequence phi_n(x) = phi x^n of the delta operator f^{-1}(D), with
// the four defining conditions verified.
inline std::vector<std::vector<Scalar>> basic_sequence(const Series& f, int size) {
  f.require_invertible();
  CoeffTriangle t = phi_triangle(f, size);
  Mode m = f.mode();
  std::vector<std::vector<Scalar>> rows;
  for (int n = 0; n <= size; ++n) {
    std::vector<Scalar> row;
    for (int k = 0; k <= n; ++k) row.push_back(t.at(n, k));
    rows.push_back(std::move(row));
  }
  // defining conditions: degree, phi_0 = 1, phi_n(0) = delta_n, Q phi_{n+1} = (n+1) phi_n
  if (rows[0][0] != Scalar::one(m)) throw std::logic_error("phi_0 != 1");
  Series g = comp_inverse(f, size);
  for (int n = 0; n <= size; ++n) {
    if (rows[static_cast<std::size_t>(n)].back().is_zero())
      throw std::logic_error("deg phi_n < n");
    Scalar at0 = rows[static_cast<std::size_t>(n)][0];
    if (n == 0 ? !at0.is_one() : !at0.is_zero())
      throw std::logic_error("phi_n(0) != delta_n");
    if (n + 1 <= size) {
      std::vector<Scalar> lhs = apply_series_in_d(g, rows[static_cast<std::size_t>(n + 1)]);
      for (int i = 0; i <= n; ++i) {
        Scalar rhs = Scalar::integer(n + 1, m) * rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
        Scalar diff = lhs[static_cast<std::size_t>(i)] - rhs;
        bool ok = m == Mode::exact ? diff.is_zero() : diff.abs() < Real("1e-20");
        if (!ok) throw std::logic_error("Q phi_{n+1} != (n+1) phi_n");
      }
    }
  }
  return rows;
}

}  // namespace iterfrac

#endif  // ITERFRAC_ITERATE_HPP
