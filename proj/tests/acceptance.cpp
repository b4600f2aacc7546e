// Acceptance suite: runs each gate and prints one pass/fail line per
// criterion. Exit code is the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "iterfrac/iterfrac.hpp"

using namespace iterfrac;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << label;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++failures;
}

void run(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(number, label, pass, detail);
}

Series geometric(Mode m, int order) {
  Series f(m, order);
  for (int n = 1; n <= order; ++n) f.set_coeff(n, Scalar::one(m));
  return f;
}

Series moebius(const Scalar& q, int order) {
  Series f(q.mode(), order);
  for (int n = 1; n <= order; ++n) f.set_coeff(n, q);
  return f;
}

Series random_numeric_series(std::mt19937_64& rng, const Scalar& q, int order) {
  Series f(Mode::numeric, order);
  f.set_coeff(1, q);
  std::uniform_int_distribution<int> den_pick(1, 4);
  for (int n = 2; n <= order; ++n) {
    int den = den_pick(rng);
    std::uniform_int_distribution<int> num_pick(-3 * den, 3 * den);
    f.set_coeff(n, Scalar::rational(Rational(num_pick(rng), den), Mode::numeric));
  }
  return f;
}

// criterion 1: exact five-formula agreement over 20 random series
bool c1_five_formulas(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  const int N = 10;
  std::mt19937_64 rng(20260810);
  const Rational qs[3] = {Rational(1), Rational(2), Rational(1, 3)};
  for (int i = 0; i < 20; ++i) {
    Rational qv = qs[i % 3];
    Series f = random_invertible_series(rng, Scalar::exact(qv), N);
    for (long s = 0; s <= 5; ++s) {
      CoeffTriangle ref = iterate_discrete_matrix(f, s, N);
      Exponent se = Exponent::of_int(s);
      bool ok = iterate_monkam(f, s, N) == ref && iterate_bpp(f, s, N) == ref &&
                iterate_qschroder(f, se, N) == ref && iterate_tambs(f, se, N) == ref;
      if (ok && qv == 1) {
        ok = iterate_schroder(f, se, N) == ref &&
             iterate_jabotinsky(f, se, N, JabotinskyVariant::standard) == ref &&
             iterate_jabotinsky(f, se, N, JabotinskyVariant::alternating) == ref;
      }
      if (!ok) {
        detail = "mismatch at series " + std::to_string(i) + ", s = " + std::to_string(s);
        return false;
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail = "20 series x s in 0..5, N = 10, exact; " + std::to_string(secs) + " s";
  return secs < 60.0;
}

// criterion 2: unitary fractional iterate against the functional root
bool c2_unitary_fractional(std::string& detail) {
  const int N = 10;
  Series f = preset_series_quad(N);
  Exponent half = Exponent::of_rat(Rational(1, 2));
  Series root = oracle_functional_root(f, 2, N);
  Series viaSchroder = series_from_triangle_row(iterate_schroder(f, half, N));
  Series viaJabotinsky = series_from_triangle_row(iterate_jabotinsky(f, half, N));
  bool ok = viaSchroder == root && viaJabotinsky == root &&
            compose(viaSchroder, viaSchroder, N) == f.truncated(N);
  detail = "f = x + x^2, s = 1/2, exact through N = 10";
  return ok;
}

// criterion 3: nonunitary fractional iterate against the Moebius closed form
bool c3_nonunitary_fractional(std::string& detail) {
  const int N = 12;
  Scalar four = Scalar::integer(4, Mode::numeric);
  Series f = moebius(four, N);
  Exponent half = Exponent::of_rat(Rational(1, 2));
  Series target = oracle_moebius(four, half, N);  // 2x/(1 - x/3)
  Real worst(0);
  for (const CoeffTriangle& t :
       {iterate_qschroder(f, half, N), iterate_tambs(f, half, N, TambsVariant::standard),
        iterate_tambs(f, half, N, TambsVariant::lavoie),
        iterate_tambs(f, half, N, TambsVariant::qextracted)}) {
    for (int n = 1; n <= N; ++n) {
      Scalar got = t.at(n, 1) / Scalar::integer(factorial(n), Mode::numeric);
      Real rel = abs_delta(got, target.coeff(n)) / target.coeff(n).abs();
      if (rel > worst) worst = rel;
    }
  }
  detail = "max relative error " + worst.str(4);
  return worst < Real("1e-25");
}

// criterion 4: group law at complex q
bool c4_group_law(std::string& detail) {
  const int N = 8;
  std::mt19937_64 rng(41);
  Scalar q = Scalar::numeric(Complex(Real("0.7"), Real("0.1")));
  Series f = random_numeric_series(rng, q, N);
  Exponent s = Exponent::of_num(Complex(Real("0.3"), Real(0)));
  Exponent t = Exponent::of_num(Complex(Real("0.7"), Real(0)));
  CoeffTriangle prod = triangle_product(iterate_tambs(f, s, N), iterate_tambs(f, t, N));
  Real dev = triangle_deviation(prod, phi_triangle(f, N));
  detail = "max relative deviation " + dev.str(4);
  return dev < Real("1e-20");
}

// criterion 5: first-coefficient, second-coefficient, and diagonal laws
bool c5_coefficient_laws(std::string& detail) {
  const int N = 8;
  std::mt19937_64 rng(43);
  // exact, integer s, all discrete-capable methods
  for (Rational qv : {Rational(1), Rational(2), Rational(1, 3)}) {
    Series f = random_invertible_series(rng, Scalar::exact(qv), N);
    Scalar q = f.q();
    for (long s = 0; s <= 4; ++s) {
      Exponent se = Exponent::of_int(s);
      std::vector<CoeffTriangle> ts{iterate_discrete_matrix(f, s, N), iterate_monkam(f, s, N),
                                    iterate_bpp(f, s, N), iterate_qschroder(f, se, N),
                                    iterate_tambs(f, se, N),
                                    iterate_tambs(f, se, N, TambsVariant::lavoie)};
      if (qv == 1) {
        ts.push_back(iterate_schroder(f, se, N));
        ts.push_back(iterate_jabotinsky(f, se, N));
        ts.push_back(iterate_jabotinsky(f, se, N, JabotinskyVariant::alternating));
      }
      Scalar qs = scalar_pow(q, se);
      Scalar law21 = exp_coeff(f, 2) * scalar_pow(q, se - 1) * q_number(se, q);
      for (const CoeffTriangle& t : ts) {
        if (!(t.at(1, 1) == qs)) { detail = "[1 1] law, exact"; return false; }
        if (!(t.at(2, 1) == law21)) { detail = "[2 1] law, exact"; return false; }
        for (int n = 1; n <= N; ++n)
          if (!(t.at(n, n) == scalar_pow(q, se * n))) { detail = "[n n] law, exact"; return false; }
      }
    }
  }
  // numeric, fractional s
  Real tol("1e-25");
  for (const char* qtext : {"2", "0.7+0.1i"}) {
    Scalar q = Scalar::numeric(parse_complex(qtext));
    Series f = random_numeric_series(rng, q, N);
    for (const Exponent& s : {Exponent::of_rat(Rational(1, 2)),
                              Exponent::of_num(Complex(Real("0.3"), Real(0)))}) {
      std::vector<CoeffTriangle> ts{iterate_qschroder(f, s, N),
                                    iterate_tambs(f, s, N, TambsVariant::standard),
                                    iterate_tambs(f, s, N, TambsVariant::lavoie),
                                    iterate_tambs(f, s, N, TambsVariant::qextracted)};
      Scalar qs = scalar_pow(q, s);
      Scalar law21 = exp_coeff(f, 2) * scalar_pow(q, s - 1) * q_number(s, q);
      for (const CoeffTriangle& t : ts) {
        if (rel_deviation(t.at(1, 1), qs) > tol) { detail = "[1 1] law, numeric"; return false; }
        if (rel_deviation(t.at(2, 1), law21) > tol) { detail = "[2 1] law, numeric"; return false; }
        for (int n = 1; n <= N; ++n)
          if (rel_deviation(t.at(n, n), scalar_pow(q, s * n)) > tol) {
            detail = "[n n] law, numeric";
            return false;
          }
      }
    }
  }
  detail = "exact for integer s; < 1e-25 numeric fractional";
  return true;
}

// criterion 6: iterative logarithm closed forms, form agreement, FD slope
bool c6_itlog(std::string& detail) {
  // itlog(x/(1-x)) = x^2 exactly
  ItlogResult geo = itlog(geometric(Mode::exact, 10), 10, ItlogForm::classical);
  for (int n = 0; n <= 10; ++n) {
    Scalar want = n == 2 ? Scalar::exact(Rational(2)) : Scalar::zero(Mode::exact);
    if (!(geo.body[static_cast<std::size_t>(n)] == want)) {
      detail = "itlog(x/(1-x)) != x^2";
      return false;
    }
  }
  // itlog(qx) = x log q
  Series lin(Mode::exact, 6);
  lin.set_coeff(1, Scalar::exact(Rational(5)));
  ItlogResult ll = itlog(lin, 6, ItlogForm::pochhammer);
  if (!(ll.logq_symbolic && ll.order_index() == 1 && ll.body[1] == Scalar::exact(Rational(1)))) {
    detail = "itlog(qx) != x log q";
    return false;
  }
  for (int n = 2; n <= 6; ++n)
    if (!ll.body[static_cast<std::size_t>(n)].is_zero()) {
      detail = "itlog(qx) has spurious higher terms";
      return false;
    }
  // both forms agree for q in {2, 1/3} through N = 10, exact
  std::mt19937_64 rng(47);
  for (Rational qv : {Rational(2), Rational(1, 3)}) {
    Series f = random_invertible_series(rng, Scalar::exact(qv), 10);
    if (!(itlog(f, 10, ItlogForm::pochhammer).body == itlog(f, 10, ItlogForm::discrete).body)) {
      detail = "form disagreement at q = " + Scalar::exact(qv).str();
      return false;
    }
  }
  // finite differences over h in {1e-4, 1e-5, 1e-6}: deviation linear in h
  // (every pairwise log-log slope within 1 +- 0.1)
  Series f = geometric(Mode::numeric, 6);
  Real d4 = itlog_fd_check(f, Scalar::numeric(Real("1e-4")), 6);
  Real d5 = itlog_fd_check(f, Scalar::numeric(Real("1e-5")), 6);
  Real d6 = itlog_fd_check(f, Scalar::numeric(Real("1e-6")), 6);
  double s45 = Real(log(d4 / d5)).convert_to<double>() / std::log(10.0);
  double s56 = Real(log(d5 / d6)).convert_to<double>() / std::log(10.0);
  detail = "FD log-log slopes " + std::to_string(s45) + ", " + std::to_string(s56);
  return s45 > 0.9 && s45 < 1.1 && s56 > 0.9 && s56 < 1.1;
}

// criterion 7: truncation lemmas, exact
bool c7_truncation(std::string& detail) {
  const int N = 10;
  std::mt19937_64 rng(53);
  Series fu = random_invertible_series(rng, Scalar::exact(Rational(1)), N);
  CoeffTriangle phiu = phi_triangle(fu, N);
  QContext ctxu(fu.q());
  Series fq = random_invertible_series(rng, Scalar::exact(Rational(2)), N);
  CoeffTriangle phiq = phi_triangle(fq, N);
  QContext ctxq(fq.q());
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= n; ++k)
      for (int p = n - k + 1; p <= N + 1; ++p) {
        // (phi - 1)^p through the weak-chain sum with diagonal cancellation
        if (!pochhammer_chain_coeff(phiu, ctxu, n, k, p).is_zero()) {
          detail = "(phi-1)^p nonzero at (" + std::to_string(n) + "," + std::to_string(k) + ")";
          return false;
        }
        if (!pochhammer_chain_coeff(phiq, ctxq, n, k, p).is_zero()) {
          detail = "(phi,-q^k)_q^p nonzero at (" + std::to_string(n) + "," + std::to_string(k) + ")";
          return false;
        }
      }
  detail = "all p > n - k vanish, n <= 10, exact";
  return true;
}

// criterion 8: chain-partition bijection, exhaustive
bool c8_partition_lemma(std::string& detail) {
  std::size_t cases = 0;
  for (int s = 1; s <= 4; ++s)
    for (int m = 0; m <= 4; ++m)
      for (int k : {0, 1, 2}) {
        PartitionLemmaReport rep = verify_partition_lemma(s, k, k + m);
        ++cases;
        if (!rep.ok) {
          detail = "bijection fails at s=" + std::to_string(s) + ", n-k=" + std::to_string(m);
          return false;
        }
        std::size_t total = 0;
        for (std::size_t c : rep.per_p) total += c;
        if (total != rep.chain_count) {
          detail = "cardinality mismatch";
          return false;
        }
      }
  detail = std::to_string(cases) + " (s, k, n) cases, disjoint and exhaustive";
  return true;
}

// criterion 9: infinitesimal generator
bool c9_generator(std::string& detail) {
  const int N = 8;
  Real tol("1e-18");
  Real worst(0);
  for (const Scalar& q : {Scalar::integer(1, Mode::numeric), Scalar::integer(4, Mode::numeric)}) {
    Series f = q.is_one() ? geometric(Mode::numeric, N) : moebius(q, N);
    for (const Exponent& s : {Exponent::of_int(2), Exponent::of_num(Complex(Real("0.5"), Real(0)))}) {
      CoeffTriangle viaGen = generator_exp(f, s, N);
      CoeffTriangle direct = iterate(f, s, N);
      Real dev = triangle_deviation(viaGen, direct);
      if (dev > worst) worst = dev;
    }
  }
  detail = "max deviation " + worst.str(4);
  return worst < tol;
}

// criterion 10: q-calculus identities, exact
bool c10_q_identities(std::string& detail) {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> pick(-4, 4);
  std::uniform_int_distribution<int> qpick(2, 9);
  // q-Taylor on random polynomials of degree <= 8
  for (int trial = 0; trial < 6; ++trial) {
    Rational qv(qpick(rng), qpick(rng));
    if (qv == 1) qv += 1;
    QContext ctx{Scalar::exact(qv)};
    int deg = 5 + trial % 4;
    Series f(Mode::exact, deg);
    for (int n = 0; n <= deg; ++n) f.set_coeff(n, Scalar::exact(Rational(pick(rng), 2)));
    Scalar c = Scalar::exact(Rational(pick(rng), 3));
    std::vector<Scalar> acc(static_cast<std::size_t>(deg) + 1, Scalar::zero(Mode::exact));
    Series der = f;
    for (int p = 0; p <= deg; ++p) {
      Scalar w = series_eval(der, c) / q_factorial(p, ctx);
      auto gauss = gauss_expand(p, ctx);
      for (int l = 0; l <= p; ++l) {
        Scalar mc = Scalar::one(Mode::exact);
        for (int i = 0; i < l; ++i) mc *= -c;
        acc[static_cast<std::size_t>(p - l)] += w * gauss[static_cast<std::size_t>(l)] * mc;
      }
      if (p < deg) der = q_derivative(der, ctx);
    }
    for (int n = 0; n <= deg; ++n)
      if (!(acc[static_cast<std::size_t>(n)] == f.coeff(n))) {
        detail = "q-Taylor fails at degree " + std::to_string(n);
        return false;
      }
  }
  // alternating Gauss sum and q-hockey-stick, a, b <= 6
  for (int trial = 0; trial < 4; ++trial) {
    Rational qv(qpick(rng), qpick(rng));
    if (qv == 1) qv += Rational(1, 2);
    QContext ctx{Scalar::exact(qv)};
    for (int a = -2; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        Scalar lhs = Scalar::zero(Mode::exact);
        for (int p = 0; p <= b; ++p) {
          Scalar t = q_binomial(Exponent::of_int(a), p, ctx) *
                     ctx.qpow(static_cast<long long>(p) * (p - 1) / 2);
          lhs += (p % 2 ? -t : t);
        }
        if (!(lhs == alt_sum_identity(Exponent::of_int(a), b, ctx))) {
          detail = "alternating sum fails at a=" + std::to_string(a) + " b=" + std::to_string(b);
          return false;
        }
      }
    for (int n = 2; n <= 7; ++n)
      for (int l = 1; l <= n - 1; ++l) {
        Scalar lhs = Scalar::zero(Mode::exact);
        for (int p = l; p <= n - 1; ++p)
          lhs += q_binomial(static_cast<long long>(p - 1), l - 1, ctx) *
                 ctx.qpow(-static_cast<long long>(l) * p);
        if (!(lhs == hockey_stick(n, l, ctx))) {
          detail = "hockey stick fails at n=" + std::to_string(n) + " l=" + std::to_string(l);
          return false;
        }
      }
  }
  detail = "q-Taylor deg <= 8, alternating sum and hockey stick a, b <= 6, exact";
  return true;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  run(1, "five-formula agreement, exact", c1_five_formulas);
  run(2, "unitary fractional iterate vs functional root", c2_unitary_fractional);
  run(3, "nonunitary fractional iterate vs Moebius closed form", c3_nonunitary_fractional);
  run(4, "group law at complex q", c4_group_law);
  run(5, "coefficient laws across methods", c5_coefficient_laws);
  run(6, "iterative logarithm", c6_itlog);
  run(7, "truncation lemmas", c7_truncation);
  run(8, "chain-partition bijection", c8_partition_lemma);
  run(9, "infinitesimal generator exponential", c9_generator);
  run(10, "q-calculus identities", c10_q_identities);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
            << failures << " failing) in " << secs << " s" << std::endl;
  return failures;
}
