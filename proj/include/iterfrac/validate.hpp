#ifndef ITERFRAC_VALIDATE_HPP
#define ITERFRAC_VALIDATE_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "iterfrac/itlog.hpp"
#include "iterfrac/oracles.hpp"

namespace iterfrac {

// Deterministic random invertible series with rational coefficients in
// [-3, 3] and prescribed leading coefficient q.
inline Series random_invertible_series(std::mt19937_64& rng, const Scalar& q, int order) {
  Mode m = q.mode();
  Series f(m, order);
  std::uniform_int_distribution<int> den_pick(1, 4);
  f.set_coeff(1, q);
  for (int n = 2; n <= order; ++n) {
    int den = den_pick(rng);
    std::uniform_int_distribution<int> num_pick(-3 * den, 3 * den);
    int num = num_pick(rng);
    f.set_coeff(n, Scalar::rational(Rational(num, den), m));
  }
  return f;
}

inline Series series_from_triangle_row(const CoeffTriangle& t) {
  // ordinary coefficients of f^s from the k = 1 column: q_n = [n 1]/n!
  Series r(t.mode(), t.size());
  for (int n = 1; n <= t.size(); ++n)
    r.set_coeff(n, t.at(n, 1) / Scalar::integer(factorial(n), t.mode()));
  return r;
}

inline Series preset_series_quad(int order) {
  Series f(Mode::exact, order);
  if (order >= 1) f.set_coeff(1, Scalar::one(Mode::exact));
  if (order >= 2) f.set_coeff(2, Scalar::one(Mode::exact));
  return f;
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline void record(std::vector<CheckResult>& out, const std::string& name, bool pass,
                   const std::string& detail = "") {
  out.push_back({name, pass, detail});
}

template <typename Fn>
inline void guarded(std::vector<CheckResult>& out, const std::string& name, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    record(out, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace detail

// Cross-check battery behind the CLI `validate` subcommand. Order is the
// triangle size used in the heavier checks; results are sorted by name.
inline std::vector<CheckResult> run_validation(int order, const Real& tol) {
  std::vector<CheckResult> out;
  using detail::record;
  int n8 = std::min(order, 8);

  detail::guarded(out, "compose-inverse-roundtrip", [&] {
    std::mt19937_64 rng(11);
    Series f = random_invertible_series(rng, Scalar::exact(Rational(2)), order);
    Series g = comp_inverse(f, order);
    bool ok = compose(f, g, order) == identity_series(Mode::exact, order) &&
              compose(g, f, order) == identity_series(Mode::exact, order);
    record(out, "compose-inverse-roundtrip", ok);
  });

  detail::guarded(out, "five-formula-agreement", [&] {
    std::mt19937_64 rng(23);
    bool ok = true;
    std::string detail;
    for (Rational qv : {Rational(1), Rational(2), Rational(1, 3)}) {
      Series f = random_invertible_series(rng, Scalar::exact(qv), order);
      for (long s = 0; s <= 3 && ok; ++s) {
        CoeffTriangle ref = iterate_discrete_matrix(f, s, order);
        Exponent se = Exponent::of_int(s);
        ok = ok && iterate_monkam(f, s, order) == ref;
        ok = ok && iterate_bpp(f, s, order) == ref;
        ok = ok && iterate_qschroder(f, se, order) == ref;
        ok = ok && iterate_tambs(f, se, order) == ref;
        ok = ok && iterate_tambs(f, se, order, TambsVariant::lavoie) == ref;
        if (qv == 1) {
          ok = ok && iterate_schroder(f, se, order) == ref;
          ok = ok && iterate_jabotinsky(f, se, order) == ref;
          ok = ok && iterate_jabotinsky(f, se, order, JabotinskyVariant::alternating) == ref;
        }
        if (!ok) detail = "q=" + Scalar::exact(qv).str() + " s=" + std::to_string(s);
      }
    }
    record(out, "five-formula-agreement", ok, detail);
  });

  detail::guarded(out, "unitary-fractional-vs-root", [&] {
    Series f = preset_series_quad(order);
    Exponent half = Exponent::of_rat(Rational(1, 2));
    Series g = series_from_triangle_row(iterate_schroder(f, half, order));
    Series gj = series_from_triangle_row(iterate_jabotinsky(f, half, order));
    Series root = oracle_functional_root(f, 2, order);
    bool ok = g == root && gj == root && compose(g, g, order) == f.truncated(order);
    record(out, "unitary-fractional-vs-root", ok);
  });

  detail::guarded(out, "nonunitary-vs-moebius", [&] {
    Series f(Mode::numeric, order);
    Scalar four = Scalar::integer(4, Mode::numeric);
    for (int n = 1; n <= order; ++n) f.set_coeff(n, four);
    Exponent half = Exponent::of_rat(Rational(1, 2));
    Series target = oracle_moebius(four, half, order);
    Real worst(0);
    for (TambsVariant v : {TambsVariant::standard, TambsVariant::lavoie, TambsVariant::qextracted}) {
      Series got = series_from_triangle_row(iterate_tambs(f, half, order, v));
      for (int n = 1; n <= order; ++n)
        worst = std::max(worst, rel_deviation(got.coeff(n), target.coeff(n)));
    }
    Series gots = series_from_triangle_row(iterate_qschroder(f, half, order));
    for (int n = 1; n <= order; ++n)
      worst = std::max(worst, rel_deviation(gots.coeff(n), target.coeff(n)));
    record(out, "nonunitary-vs-moebius", worst <= tol, "max dev " + real_to_string(worst));
  });

  detail::guarded(out, "group-law-numeric", [&] {
    std::mt19937_64 rng(37);
    Scalar q = Scalar::numeric(Complex(Real("0.7"), Real("0.1")));
    Series fr = random_invertible_series(rng, Scalar::exact(Rational(1)), n8);
    Series f(Mode::numeric, n8);
    f.set_coeff(1, q);
    for (int n = 2; n <= n8; ++n) f.set_coeff(n, fr.coeff(n).to_numeric());
    Exponent s = Exponent::of_num(Complex(Real("0.3"), Real(0)));
    Exponent t = Exponent::of_num(Complex(Real("0.7"), Real(0)));
    CoeffTriangle prod = triangle_product(iterate_tambs(f, s, n8), iterate_tambs(f, t, n8));
    Real dev = triangle_deviation(prod, phi_triangle(f, n8));
    record(out, "group-law-numeric", dev <= Real("1e-20"), "max dev " + real_to_string(dev));
  });

  detail::guarded(out, "coefficient-laws", [&] {
    std::mt19937_64 rng(41);
    bool ok = true;
    for (Rational qv : {Rational(2), Rational(1, 3)}) {
      Scalar q = Scalar::exact(qv);
      Series f = random_invertible_series(rng, q, n8);
      for (long s = 0; s <= 3 && ok; ++s) {
        CoeffTriangle t = iterate_discrete_matrix(f, s, n8);
        ok = ok && t.at(1, 1) == scalar_pow(q, Exponent::of_int(s));
        ok = ok && t.at(2, 1) == exp_coeff(f, 2) * scalar_pow(q, Exponent::of_int(s - 1)) *
                                     q_number(s, q);
        for (int n = 1; n <= n8 && ok; ++n)
          ok = t.at(n, n) == scalar_pow(q, Exponent::of_int(n * s));
      }
    }
    record(out, "coefficient-laws", ok);
  });

  detail::guarded(out, "itlog-closed-forms", [&] {
    // itlog(x/(1-x)) = x^2; itlog(qx) = x log q
    Series geo(Mode::exact, order);
    for (int n = 1; n <= order; ++n) geo.set_coeff(n, Scalar::one(Mode::exact));
    ItlogResult il = itlog(geo, order, ItlogForm::classical);
    bool ok = true;
    for (int n = 0; n <= order; ++n) {
      Scalar want = n == 2 ? Scalar::exact(Rational(2)) : Scalar::zero(Mode::exact);
      ok = ok && il.body[static_cast<std::size_t>(n)] == want;
    }
    Series lin(Mode::exact, order);
    lin.set_coeff(1, Scalar::exact(Rational(3)));
    ItlogResult il2 = itlog(lin, order, ItlogForm::pochhammer);
    ok = ok && il2.logq_symbolic && il2.order_index() == 1;
    for (int n = 2; n <= order; ++n)
      ok = ok && il2.body[static_cast<std::size_t>(n)].is_zero();
    record(out, "itlog-closed-forms", ok);
  });

  detail::guarded(out, "itlog-form-agreement", [&] {
    std::mt19937_64 rng(53);
    bool ok = true;
    for (Rational qv : {Rational(2), Rational(1, 3)}) {
      Series f = random_invertible_series(rng, Scalar::exact(qv), order);
      ItlogResult a = itlog(f, order, ItlogForm::pochhammer);
      ItlogResult b = itlog(f, order, ItlogForm::discrete);
      ok = ok && a.body == b.body;
    }
    record(out, "itlog-form-agreement", ok);
  });

  detail::guarded(out, "truncation-lemmas", [&] {
    std::mt19937_64 rng(61);
    bool ok = true;
    Series fu = random_invertible_series(rng, Scalar::exact(Rational(1)), n8);
    CoeffTriangle phiu = phi_triangle(fu, n8);
    QContext ctxu(fu.q());
    Series fq = random_invertible_series(rng, Scalar::exact(Rational(2)), n8);
    CoeffTriangle phiq = phi_triangle(fq, n8);
    QContext ctxq(fq.q());
    for (int n = 0; n <= n8 && ok; ++n)
      for (int k = 0; k <= n && ok; ++k)
        for (int p = n - k + 1; p <= n8 && ok; ++p) {
          ok = ok && pochhammer_chain_coeff(phiu, ctxu, n, k, p).is_zero();
          ok = ok && pochhammer_chain_coeff(phiq, ctxq, n, k, p).is_zero();
        }
    record(out, "truncation-lemmas", ok);
  });

  detail::guarded(out, "partition-lemma", [&] {
    bool ok = true;
    for (int s = 1; s <= 4 && ok; ++s)
      for (int md = 0; md <= 4 && ok; ++md) {
        PartitionLemmaReport rep = verify_partition_lemma(s, 1, 1 + md);
        ok = rep.ok;
      }
    record(out, "partition-lemma", ok);
  });

  detail::guarded(out, "q-identities", [&] {
    std::mt19937_64 rng(71);
    bool ok = true;
    for (Rational qv : {Rational(2), Rational(1, 3), Rational(-3, 5)}) {
      QContext ctx{Scalar::exact(qv)};
      for (int a = -3; a <= 6 && ok; ++a)
        for (int b = 0; b <= 6 && ok; ++b) {
          Scalar lhs = Scalar::zero(Mode::exact);
          for (int p = 0; p <= b; ++p) {
            Scalar term = q_binomial(static_cast<long long>(a), p, ctx) *
                          ctx.qpow(static_cast<long long>(p) * (p - 1) / 2);
            lhs += (p % 2 ? -term : term);
          }
          ok = lhs == alt_sum_identity(Exponent::of_int(a), b, ctx);
        }
      for (int n = 2; n <= 7 && ok; ++n)
        for (int l = 1; l <= n - 1 && ok; ++l) {
          Scalar lhs = Scalar::zero(Mode::exact);
          for (int p = l; p <= n - 1; ++p)
            lhs += q_binomial(static_cast<long long>(p - 1), l - 1, ctx) *
                   ctx.qpow(-static_cast<long long>(l) * p);
          ok = lhs == hockey_stick(n, l, ctx);
        }
    }
    record(out, "q-identities", ok);
  });

  detail::guarded(out, "generator-exponential", [&] {
    int n6 = std::min(order, 6);
    Series f(Mode::numeric, n6);
    for (int n = 1; n <= n6; ++n) f.set_coeff(n, Scalar::one(Mode::numeric));
    CoeffTriangle viaExp = generator_exp(f, Exponent::of_int(2), n6);
    CoeffTriangle direct = iterate_discrete_matrix(f, 2, n6);
    Real dev = triangle_deviation(viaExp, direct);
    record(out, "generator-exponential", dev <= Real("1e-18"), "max dev " + real_to_string(dev));
  });

  std::sort(out.begin(), out.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return out;
}

}  // namespace iterfrac

#endif  // ITERFRAC_VALIDATE_HPP
