#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "iterfrac/series.hpp"
#include "iterfrac/validate.hpp"

using namespace iterfrac;

namespace {

Series exact_series(std::initializer_list<Rational> cs) {
  std::vector<Scalar> v;
  for (const Rational& c : cs) v.push_back(Scalar::exact(c));
  return Series(std::move(v));
}

}  // namespace

TEST_CASE("compose geometric with itself doubles the ratio") {
  // x/(1-x) composed with itself is x/(1-2x)
  Series f(Mode::exact, 8);
  for (int n = 1; n <= 8; ++n) f.set_coeff(n, Scalar::one(Mode::exact));
  Series g = compose(f, f, 8);
  for (int n = 1; n <= 8; ++n)
    CHECK(g.coeff(n) == Scalar::exact(rat_pow(Rational(2), n - 1)));
}

TEST_CASE("compose with the identity") {
  std::mt19937_64 rng(3);
  Series f = random_invertible_series(rng, Scalar::exact(Rational(-5, 3)), 7);
  CHECK(compose(f, identity_series(Mode::exact, 7), 7) == f);
}

TEST_CASE("compose quad with itself") {
  Series f = exact_series({0, 1, 1});
  Series ff = compose(f.truncated(4), f.truncated(4), 4);
  CHECK(ff == exact_series({0, 1, 2, 2, 1}));
}

TEST_CASE("compose rejects nonzero inner constant term") {
  Series f = exact_series({0, 1, 1});
  Series g = exact_series({1, 1, 0});
  CHECK_THROWS_AS(compose(f, g, 2), ConstantTermNonzero);
}

TEST_CASE("compositional inverse of the geometric series") {
  Series f(Mode::exact, 8);
  for (int n = 1; n <= 8; ++n) f.set_coeff(n, Scalar::one(Mode::exact));
  Series g = comp_inverse(f, 8);
  for (int n = 1; n <= 8; ++n)
    CHECK(g.coeff(n) == Scalar::exact(n % 2 ? Rational(1) : Rational(-1)));
  CHECK(compose(f, g, 8) == identity_series(Mode::exact, 8));
  CHECK(compose(g, f, 8) == identity_series(Mode::exact, 8));
}

TEST_CASE("inverse special cases and errors") {
  CHECK(comp_inverse(identity_series(Mode::exact, 5), 5) == identity_series(Mode::exact, 5));
  Series lin(Mode::exact, 3);
  lin.set_coeff(1, Scalar::exact(Rational(5)));
  Series inv = comp_inverse(lin, 3);
  CHECK(inv.coeff(1) == Scalar::exact(Rational(1, 5)));
  Series bad = exact_series({0, 0, 1});
  CHECK_THROWS_AS(comp_inverse(bad, 2), NotInvertible);
}

TEST_CASE("inverse is an involution") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    Series f = random_invertible_series(rng, Scalar::exact(Rational(trial + 1, 2)), 8);
    CHECK(comp_inverse(comp_inverse(f, 8), 8) == f.truncated(8));
  }
}

TEST_CASE("compose is associative through shared truncation") {
  std::mt19937_64 rng(7);
  Series f = random_invertible_series(rng, Scalar::exact(Rational(2)), 6);
  Series g = random_invertible_series(rng, Scalar::exact(Rational(1, 2)), 6);
  Series h = random_invertible_series(rng, Scalar::exact(Rational(-1)), 6);
  CHECK(compose(compose(f, g, 6), h, 6) == compose(f, compose(g, h, 6), 6));
}

TEST_CASE("shift by a fixed point") {
  // f = x^2 has fixed point 1; f(x+1) - 1 = 2x + x^2
  Series f = exact_series({0, 0, 1, 0});
  Series g = shift_fixed_point(f, Scalar::one(Mode::exact), 3);
  CHECK(g == exact_series({0, 2, 1, 0}));
}

TEST_CASE("shift by zero is the identity transform") {
  std::mt19937_64 rng(11);
  Series f = random_invertible_series(rng, Scalar::exact(Rational(3)), 6);
  CHECK(shift_fixed_point(f, Scalar::zero(Mode::exact), 6) == f);
}

TEST_CASE("shift detects the degenerate derivative") {
  Series f = exact_series({0, 2, -1});  // f(1) = 1, f'(1) = 0
  CHECK_THROWS_AS(shift_fixed_point(f, Scalar::one(Mode::exact), 2), DerivativeZero);
}

TEST_CASE("shift rejects non-fixed points") {
  Series f = exact_series({0, 2, 1});
  CHECK_THROWS_AS(shift_fixed_point(f, Scalar::one(Mode::exact), 2), NotFixedPoint);
}

TEST_CASE("shift there and back") {
  // f = -x + x^2 fixes a = 2; the shifted series g fixes -a = -2 back to f
  Series f = exact_series({0, -1, 1});
  Scalar a = Scalar::exact(2L);
  Series g = shift_fixed_point(f, a, 2);
  CHECK(g == exact_series({0, 3, 1}));
  CHECK(shift_fixed_point(g, -a, 2) == f);
}

TEST_CASE("shift works in numeric mode") {
  Series f(Mode::numeric, 3);
  f.set_coeff(2, Scalar::one(Mode::numeric));  // x^2, fixed point 1
  Series g = shift_fixed_point(f, Scalar::one(Mode::numeric), 3);
  CHECK(g.coeff(1) == Scalar::integer(2, Mode::numeric));
  CHECK(g.coeff(2) == Scalar::one(Mode::numeric));
}

TEST_CASE("ordinary and exponential coefficient views") {
  std::vector<Scalar> ord{Scalar::exact(1L), Scalar::exact(1L), Scalar::exact(1L)};
  auto exp = exp_ord_convert(ord, CoeffDirection::ord_to_exp);
  CHECK(exp[0] == Scalar::exact(1L));
  CHECK(exp[1] == Scalar::exact(1L));
  CHECK(exp[2] == Scalar::exact(2L));
  auto back = exp_ord_convert(exp, CoeffDirection::exp_to_ord);
  CHECK(back == ord);
  std::vector<Scalar> zero{Scalar::exact(0L), Scalar::exact(0L)};
  CHECK(exp_ord_convert(zero, CoeffDirection::ord_to_exp) == zero);
}

TEST_CASE("series evaluation") {
  Series f = exact_series({1, 2, 3});
  CHECK(series_eval(f, Scalar::exact(2L)) == Scalar::exact(17L));
}

TEST_CASE("order cap is enforced") {
  CHECK_THROWS_AS(Series(Mode::exact, Series::kMaxOrder + 1), BadRange);
  CHECK_THROWS_AS(Series(Mode::exact, -1), BadRange);
}
