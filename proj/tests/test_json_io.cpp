#include <catch2/catch_amalgamated.hpp>

#include "iterfrac/json_io.hpp"

using namespace iterfrac;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-0.3") == Rational(-3, 10));
  CHECK(parse_rational("2e-3") == Rational(1, 500));
  CHECK(parse_rational("1.5e2") == Rational(150));
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("complex parsing") {
  Complex z = parse_complex("0.3+0.1i");
  CHECK(z.re == Real(Rational(3, 10)));
  CHECK(z.im == Real(Rational(1, 10)));
  CHECK(parse_complex("2i").re.is_zero());
  CHECK(parse_complex("-i").im == Real(-1));
  CHECK(parse_complex("5").im.is_zero());
  Complex w = parse_complex("1e-2+2.5i");
  CHECK(w.re == Real(Rational(1, 100)));
}

TEST_CASE("exponent parsing picks the right kind") {
  CHECK(parse_exponent("3").is_integer_kind());
  CHECK(parse_exponent("-2").as_int() == -2);
  CHECK(parse_exponent("1/2").kind() == Exponent::Kind::rational);
  CHECK(parse_exponent("0.3+0i").kind() == Exponent::Kind::numeric);
  CHECK(parse_exponent("0.3").kind() == Exponent::Kind::numeric);
}

TEST_CASE("scalar JSON round trip") {
  Scalar a = Scalar::exact(Rational(-7, 3));
  CHECK(scalar_from_json(scalar_to_json(a)) == a);
  Scalar b = Scalar::numeric(Complex(Real("1.25"), Real("-0.5")));
  Scalar back = scalar_from_json(scalar_to_json(b));
  CHECK(rel_deviation(b, back) < Real("1e-36"));
  Json j = scalar_to_json(b);
  CHECK(j.at("bits").get<unsigned>() == Precision::bits());
}

TEST_CASE("series JSON round trip, both kinds") {
  Series f(Mode::exact, 3);
  f.set_coeff(1, Scalar::exact(Rational(1)));
  f.set_coeff(2, Scalar::exact(Rational(-1, 2)));
  CHECK(series_from_json(series_to_json(f)) == f);
  // exponential view divides by n! on the way back in
  Json j = series_to_json(f, /*exponential=*/true);
  CHECK(j.at("kind") == "exponential");
  CHECK(j.at("values")[2].get<std::string>() == "-1");
  CHECK(series_from_json(j) == f);
  CHECK_THROWS_AS(series_from_json(Json::parse("{\"values\": [\"1\"], \"kind\": \"x\"}")),
                  ParseError);
}

TEST_CASE("presets") {
  Series geo = preset_series("geometric", Mode::exact, 4);
  for (int n = 1; n <= 4; ++n) CHECK(geo.coeff(n).is_one());
  Series moe = preset_series("moebius(2/3)", Mode::exact, 3);
  CHECK(moe.coeff(2) == Scalar::exact(Rational(2, 3)));
  Series lin = preset_series("linear(-2)", Mode::exact, 3);
  CHECK(lin.coeff(1) == Scalar::exact(Rational(-2)));
  CHECK(lin.coeff(2).is_zero());
  Series quad = preset_series("quad", Mode::exact, 3);
  CHECK(quad.coeff(1).is_one());
  CHECK(quad.coeff(2).is_one());
  CHECK(quad.coeff(3).is_zero());
  Series cplx = preset_series("moebius(0.7+0.1i)", Mode::numeric, 3);
  CHECK(cplx.coeff(1).cplx().im == Real(Rational(1, 10)));
  CHECK_THROWS_AS(preset_series("cubic", Mode::exact, 3), ParseError);
}

TEST_CASE("triangle and itlog JSON shapes") {
  Series f = preset_series("quad", Mode::exact, 3);
  Json t = triangle_to_json(phi_triangle(f, 3));
  CHECK(t.at("order") == 3);
  CHECK(t.at("rows").size() == 4);
  CHECK(t.at("rows")[2].size() == 3);

  ItlogResult r = itlog(preset_series("moebius(2)", Mode::exact, 4), 4, ItlogForm::pochhammer);
  Json ij = itlog_to_json(r);
  CHECK(ij.at("multiplier").contains("log_of"));
  CHECK(ij.at("coeffs")[1].get<std::string>() == "1");
}

TEST_CASE("serialization is deterministic") {
  Series f = preset_series("moebius(0.7+0.1i)", Mode::numeric, 5);
  Json a = series_to_json(f);
  Json b = series_to_json(f);
  CHECK(a.dump() == b.dump());
}
