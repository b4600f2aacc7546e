#ifndef ITERFRAC_JSON_IO_HPP
#define ITERFRAC_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "iterfrac/itlog.hpp"
#include "iterfrac/series.hpp"
#include "iterfrac/triangle.hpp"

namespace iterfrac {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Number grammar: "3", "-2", "1/2", "0.25", "0.3+0.1i", "2e-3i".
// ---------------------------------------------------------------------------

// Base-10 integer parser; avoids the octal interpretation the bignum
// string constructors apply to leading zeros.
inline BigInt bigint_from_decimal(std::string s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad integer literal '" + s + "'");
  BigInt v;
  mpz_set_str(v.backend().data(), s.c_str(), 10);
  return neg ? BigInt(-v) : v;
}

inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ParseError("empty number");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num = bigint_from_decimal(s.substr(0, slash));
      BigInt den = bigint_from_decimal(s.substr(slash + 1));
      if (den.is_zero()) throw ParseError("zero denominator");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    auto epos = s.find_first_of("eE");
    if (dot == std::string::npos && epos == std::string::npos)
      return Rational(bigint_from_decimal(s));
    // decimal literal -> exact rational
    long expo = 0;
    if (epos != std::string::npos) {
      expo = std::stol(s.substr(epos + 1));
      s = s.substr(0, epos);
      dot = s.find('.');
    }
    std::string digits = s;
    long frac = 0;
    if (dot != std::string::npos) {
      frac = static_cast<long>(s.size() - dot - 1);
      digits = s.substr(0, dot) + s.substr(dot + 1);
    }
    Rational r{bigint_from_decimal(digits)};
    long net = expo - frac;
    BigInt ten10 = int_pow(BigInt(10), static_cast<unsigned long>(net < 0 ? -net : net));
    return net >= 0 ? Rational(r * ten10) : Rational(r / ten10);
  } catch (const std::exception& e) {
    throw ParseError("cannot parse '" + text + "' as a rational");
  }
}

namespace detail {

// Splits "a+bi" / "a-bi" / "bi" / "a" at the top-level sign before the
// imaginary part.
inline void split_complex(const std::string& s, std::string& re, std::string& im) {
  re = "0";
  im = "0";
  if (s.empty()) throw ParseError("empty number");
  std::string body = s;
  bool has_i = body.back() == 'i' || body.back() == 'I';
  if (!has_i) {
    re = body;
    return;
  }
  body.pop_back();
  // find the sign separating real and imaginary parts (not an exponent sign)
  for (std::size_t pos = body.size(); pos-- > 1;) {
    char c = body[pos];
    if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
      re = body.substr(0, pos);
      im = body.substr(pos);
      if (im == "+" || im == "-") im += "1";
      return;
    }
  }
  im = body.empty() ? "1" : body;
  if (im == "+" || im == "-") im += "1";
}

}  // namespace detail

inline Complex parse_complex(const std::string& text) {
  std::string re, im;
  detail::split_complex(text, re, im);
  try {
    Rational rr = parse_rational(re), ri = parse_rational(im);
    return Complex(Real(rr), Real(ri));
  } catch (const ParseError&) {
    throw ParseError("cannot parse '" + text + "' as a complex number");
  }
}

inline Scalar parse_scalar(const std::string& text, Mode mode) {
  if (mode == Mode::exact) {
    if (text.find('i') != std::string::npos || text.find('I') != std::string::npos)
      throw ParseError("complex literal needs numeric mode: '" + text + "'");
    return Scalar::exact(parse_rational(text));
  }
  return Scalar::numeric(parse_complex(text));
}

// Exponent grammar: integer, exact rational p/q, or complex numeric.
inline Exponent parse_exponent(const std::string& text) {
  std::string s = text;
  if (s.find('i') != std::string::npos || s.find('I') != std::string::npos)
    return Exponent::of_num(parse_complex(s));
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    return Exponent::of_num(parse_complex(s));
  return Exponent::of_rat(parse_rational(s));
}

// ---------------------------------------------------------------------------
// Scalar <-> JSON. Exact scalars are decimal strings "p/q"; numeric scalars
// are {"re": string, "im": string, "bits": int}.
// ---------------------------------------------------------------------------

inline Json scalar_to_json(const Scalar& v) {
  if (v.mode() == Mode::exact) return Json(v.str());
  const Complex& z = v.cplx();
  Json j;
  j["re"] = real_to_string(z.re);
  j["im"] = real_to_string(z.im);
  j["bits"] = Precision::bits();
  return j;
}

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::exact(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar::exact(Rational(j.get<long long>()));
  if (j.is_object()) {
    Real re(j.at("re").get<std::string>());
    Real im(j.at("im").get<std::string>());
    return Scalar::numeric(Complex(re, im));
  }
  throw ParseError("scalar JSON must be a string or {re, im, bits} object");
}

// ---------------------------------------------------------------------------
// Series <-> JSON: {"kind": "ordinary"|"exponential", "values": [...],
// "mode": "exact"|"numeric"}.
// ---------------------------------------------------------------------------

inline Json series_to_json(const Series& f, bool exponential = false) {
  Json j;
  j["kind"] = exponential ? "exponential" : "ordinary";
  Json vals = Json::array();
  std::vector<Scalar> cs = f.coeffs();
  if (exponential) cs = exp_ord_convert(cs, CoeffDirection::ord_to_exp);
  for (const Scalar& c : cs) vals.push_back(scalar_to_json(c));
  j["values"] = vals;
  j["mode"] = mode_name(f.mode());
  return j;
}

inline Series series_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("values"))
    throw ParseError("series JSON needs a 'values' array");
  std::string kind = j.value("kind", "ordinary");
  std::string mode = j.value("mode", "exact");
  Mode m = mode == "numeric" ? Mode::numeric : Mode::exact;
  std::vector<Scalar> cs;
  for (const Json& v : j.at("values")) {
    Scalar c = scalar_from_json(v);
    cs.push_back(m == Mode::numeric ? c.to_numeric() : c);
  }
  if (kind == "exponential") cs = exp_ord_convert(cs, CoeffDirection::exp_to_ord);
  else if (kind != "ordinary") throw ParseError("series kind must be ordinary or exponential");
  return Series(std::move(cs));
}

inline Json triangle_to_json(const CoeffTriangle& t) {
  Json rows = Json::array();
  for (int n = 0; n <= t.size(); ++n) {
    Json row = Json::array();
    for (int k = 0; k <= n; ++k) row.push_back(scalar_to_json(t.at(n, k)));
    rows.push_back(row);
  }
  Json j;
  j["order"] = t.size();
  j["mode"] = mode_name(t.mode());
  j["rows"] = rows;
  return j;
}

inline Json itlog_to_json(const ItlogResult& r) {
  Json j;
  if (r.logq_symbolic) {
    Json m;
    m["log_of"] = scalar_to_json(r.q);
    j["multiplier"] = m;
  } else {
    j["multiplier"] = scalar_to_json(r.multiplier);
  }
  Json coeffs = Json::array();
  for (const Scalar& c : r.body) coeffs.push_back(scalar_to_json(c));
  j["coeffs"] = coeffs;
  j["convention"] = "exponential";
  return j;
}

// ---------------------------------------------------------------------------
// Named presets: moebius(q) = qx/(1-x), geometric = x/(1-x),
// linear(q) = qx, quad = x + x^2.
// ---------------------------------------------------------------------------

inline Series preset_series(const std::string& text, Mode mode, int order) {
  std::string name = text;
  std::string arg;
  auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')') throw ParseError("preset argument needs closing ')'");
    name = text.substr(0, open);
    arg = text.substr(open + 1, text.size() - open - 2);
  }
  Series f(mode, order);
  if (name == "geometric" || name == "moebius") {
    Scalar q = name == "geometric" ? Scalar::one(mode)
                                   : parse_scalar(arg.empty() ? "1" : arg, mode);
    for (int n = 1; n <= order; ++n) f.set_coeff(n, q);
  } else if (name == "linear") {
    Scalar q = parse_scalar(arg.empty() ? "1" : arg, mode);
    if (order >= 1) f.set_coeff(1, q);
  } else if (name == "quad") {
    if (order >= 1) f.set_coeff(1, Scalar::one(mode));
    if (order >= 2) f.set_coeff(2, Scalar::one(mode));
  } else {
    throw ParseError("unknown preset '" + name +
                     "' (expected geometric, moebius(q), linear(q), quad)");
  }
  return f;
}

}  // namespace iterfrac

#endif  // ITERFRAC_JSON_IO_HPP
