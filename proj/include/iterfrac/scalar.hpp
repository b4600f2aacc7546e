#ifndef ITERFRAC_SCALAR_HPP
#define ITERFRAC_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <climits>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>

#include "iterfrac/errors.hpp"

namespace iterfrac {

namespace mp = boost::multiprecision;

using BigInt = mp::mpz_int;
using Rational = mp::mpq_rational;
using Real = mp::mpfr_float;  // variable precision, set via Precision

enum class Mode { exact, numeric };

inline const char* mode_name(Mode m) {
  return m == Mode::exact ? "exact" : "numeric";
}

// Process-wide working precision for numeric scalars. MPFR precision is
// configured in decimal digits; we request enough digits to cover the
// mantissa bit count (and never less).
class Precision {
 public:
  static unsigned bits() { return state().bits; }

  static void set_bits(unsigned bits) {
    if (bits < 24) bits = 24;
    state().bits = bits;
    Real::default_precision(digits_for(bits));
  }

  static unsigned digits_for(unsigned bits) {
    return static_cast<unsigned>((static_cast<std::uint64_t>(bits) * 302) / 1000) + 3;
  }

 private:
  struct State {
    unsigned bits;
    State() : bits(128) { Real::default_precision(digits_for(bits)); }
  };
  static State& state() {
    static State s;
    return s;
  }
};

inline void ensure_precision_initialized() { (void)Precision::bits(); }

namespace detail {
// Forces the default MPFR precision to the library default during static
// initialization, before any numeric value is constructed.
struct PrecisionInit {
  PrecisionInit() { ensure_precision_initialized(); }
};
inline PrecisionInit precision_init{};
}  // namespace detail

// Temporarily raises the working precision (never lowers it); restores the
// previous setting on scope exit. Values created inside the scope carry the
// raised precision and must be re-rounded on the way out.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : old_bits_(Precision::bits()) {
    if (bits > old_bits_) Precision::set_bits(bits);
  }
  ~PrecisionScope() { Precision::set_bits(old_bits_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned old_bits_;
};

// ---------------------------------------------------------------------------
// Complex numbers over MPFR reals. Principal branch for log and powers.
// ---------------------------------------------------------------------------

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) { ensure_precision_initialized(); }
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(0) {}
  explicit Complex(long v) : re(v), im(0) {}
  explicit Complex(const Rational& r) : re(r), im(0) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {Real(a.re + b.re), Real(a.im + b.im)};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {Real(a.re - b.re), Real(a.im - b.im)};
  }
  friend Complex operator-(const Complex& a) { return {Real(-a.re), Real(-a.im)}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {Real(a.re * b.re - a.im * b.im), Real(a.re * b.im + a.im * b.re)};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    if (d.is_zero()) throw DivisionByZero("complex division by zero");
    return {Real((a.re * b.re + a.im * b.im) / d),
            Real((a.im * b.re - a.re * b.im) / d)};
  }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline Real cabs(const Complex& z) { return hypot(z.re, z.im); }

inline Complex clog(const Complex& z) {
  if (z.is_zero()) throw ZeroBase("log of zero");
  return {Real(log(cabs(z))), Real(atan2(z.im, z.re))};
}

inline Complex cexp(const Complex& z) {
  Real m = exp(z.re);
  return {Real(m * cos(z.im)), Real(m * sin(z.im))};
}

inline Complex cpow_int(Complex base, long long e) {
  bool invert = e < 0;
  unsigned long long n = invert ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                                : static_cast<unsigned long long>(e);
  Complex acc(1L);
  while (n) {
    if (n & 1ull) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  if (invert) return Complex(1L) / acc;
  return acc;
}

// Principal-branch power exp(w log z); z must be nonzero.
inline Complex cpow(const Complex& z, const Complex& w) {
  if (z.is_zero()) throw ZeroBase("zero base in complex power");
  if (w.is_zero()) return Complex(1L);
  return cexp(w * clog(z));
}

// ---------------------------------------------------------------------------
// Scalar: mode-tagged field element. Exact = reduced rational (GMP),
// numeric = complex over MPFR. Modes never coerce silently.
// ---------------------------------------------------------------------------

class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}

  static Scalar exact(Rational r) { return Scalar(std::move(r)); }
  static Scalar exact(long num, long den = 1) {
    // the (int, int) rational constructor treats negative denominators as
    // unsigned; the bignum overload canonicalizes correctly
    return Scalar(Rational(BigInt(num), BigInt(den)));
  }
  static Scalar numeric(Complex z) { return Scalar(std::move(z)); }
  static Scalar numeric(const Real& re, const Real& im = Real(0)) {
    return Scalar(Complex(re, im));
  }

  static Scalar zero(Mode m) { return integer(0, m); }
  static Scalar one(Mode m) { return integer(1, m); }
  static Scalar integer(const BigInt& n, Mode m) {
    if (m == Mode::exact) return Scalar(Rational(n));
    return Scalar(Complex(Real(n), Real(0)));
  }
  static Scalar integer(long n, Mode m) { return integer(BigInt(n), m); }
  // Rational value in the requested mode (exactly representable either way).
  static Scalar rational(const Rational& r, Mode m) {
    if (m == Mode::exact) return Scalar(r);
    return Scalar(Complex(Real(r), Real(0)));
  }

  Mode mode() const {
    return std::holds_alternative<Rational>(v_) ? Mode::exact : Mode::numeric;
  }

  const Rational& rat() const {
    if (mode() != Mode::exact) throw ModeMismatch("expected exact scalar");
    return std::get<Rational>(v_);
  }
  const Complex& cplx() const {
    if (mode() != Mode::numeric) throw ModeMismatch("expected numeric scalar");
    return std::get<Complex>(v_);
  }

  bool is_zero() const {
    return mode() == Mode::exact ? rat().is_zero() : cplx().is_zero();
  }
  bool is_one() const {
    return mode() == Mode::exact ? rat() == 1 : cplx() == Complex(1L);
  }
  bool is_integer() const {
    return mode() == Mode::exact ? mp::denominator(rat()) == 1
                                 : (cplx().is_real() && floor(cplx().re) == cplx().re);
  }

  // |value| as a Real, usable in either mode (for tolerance checks).
  Real abs() const {
    if (mode() == Mode::exact) {
      Real r(rat());
      return r < 0 ? Real(-r) : r;
    }
    return cabs(cplx());
  }

  Scalar to_numeric() const {
    if (mode() == Mode::numeric) return *this;
    return Scalar(Complex(Real(rat()), Real(0)));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_mode(b);
    if (a.mode() == Mode::exact) return Scalar(Rational(a.rat() + b.rat()));
    return Scalar(a.cplx() + b.cplx());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.check_mode(b);
    if (a.mode() == Mode::exact) return Scalar(Rational(a.rat() - b.rat()));
    return Scalar(a.cplx() - b.cplx());
  }
  friend Scalar operator-(const Scalar& a) {
    if (a.mode() == Mode::exact) return Scalar(Rational(-a.rat()));
    return Scalar(-a.cplx());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_mode(b);
    if (a.mode() == Mode::exact) return Scalar(Rational(a.rat() * b.rat()));
    return Scalar(a.cplx() * b.cplx());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    a.check_mode(b);
    if (b.is_zero()) throw DivisionByZero();
    if (a.mode() == Mode::exact) return Scalar(Rational(a.rat() / b.rat()));
    return Scalar(a.cplx() / b.cplx());
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.check_mode(b);
    if (a.mode() == Mode::exact) return a.rat() == b.rat();
    return a.cplx() == b.cplx();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

 private:
  explicit Scalar(Rational r) : v_(std::move(r)) {}
  explicit Scalar(Complex z) : v_(std::move(z)) {}

  void check_mode(const Scalar& other) const {
    if (mode() != other.mode())
      throw ModeMismatch("cannot mix exact and numeric scalars");
  }

  std::variant<Rational, Complex> v_;
};

inline std::string real_to_string(const Real& r) {
  return r.str(Real::default_precision() + 3);
}

inline std::string Scalar::str() const {
  if (mode() == Mode::exact) {
    const Rational& r = rat();
    if (mp::denominator(r) == 1) return mp::numerator(r).str();
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
  }
  const Complex& z = cplx();
  if (z.im.is_zero()) return real_to_string(z.re);
  std::string im = real_to_string(z.im);
  std::string sep = (!im.empty() && im[0] == '-') ? "" : "+";
  return real_to_string(z.re) + sep + im + "i";
}

// Re-round to the current default precision (binary-op results otherwise
// inherit their operands' precision).
inline Real reround(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

inline Complex reround(const Complex& z) { return {reround(z.re), reround(z.im)}; }

inline Scalar reround(const Scalar& s) {
  if (s.mode() == Mode::exact) return s;
  return Scalar::numeric(reround(s.cplx()));
}

// |a - b| as a Real (modes must match).
inline Real abs_delta(const Scalar& a, const Scalar& b) { return (a - b).abs(); }

// Mixed absolute/relative deviation: |a-b| / max(1, |a|, |b|).
inline Real rel_deviation(const Scalar& a, const Scalar& b) {
  Real d = abs_delta(a, b);
  Real s = a.abs();
  Real t = b.abs();
  if (t > s) s = t;
  if (s < 1) s = 1;
  return Real(d / s);
}

inline bool approx_equal(const Scalar& a, const Scalar& b, const Real& tol) {
  return rel_deviation(a, b) <= tol;
}

inline Real default_tolerance() {
  // Relative comparison tolerance at default precision.
  return Real("1e-25");
}

// ---------------------------------------------------------------------------
// Exponent: the iteration exponent s (integer, exact rational, or complex).
// ---------------------------------------------------------------------------

class Exponent {
 public:
  enum class Kind { integer, rational, numeric };

  Exponent() : v_(static_cast<long long>(0)) {}
  static Exponent of_int(long long n) { return Exponent(n); }
  static Exponent of_rat(Rational r) {
    if (mp::denominator(r) == 1) {
      BigInt n = mp::numerator(r);
      if (n >= LLONG_MIN && n <= LLONG_MAX)
        return Exponent(static_cast<long long>(n));
    }
    return Exponent(std::move(r));
  }
  static Exponent of_num(Complex z) { return Exponent(std::move(z)); }

  Kind kind() const {
    if (std::holds_alternative<long long>(v_)) return Kind::integer;
    if (std::holds_alternative<Rational>(v_)) return Kind::rational;
    return Kind::numeric;
  }

  bool is_integer_kind() const { return kind() == Kind::integer; }
  long long as_int() const {
    if (!is_integer_kind()) throw BadRange("exponent is not an integer");
    return std::get<long long>(v_);
  }

  Rational as_rational() const {
    switch (kind()) {
      case Kind::integer: return Rational(std::get<long long>(v_));
      case Kind::rational: return std::get<Rational>(v_);
      default: throw ModeMismatch("numeric exponent has no exact value");
    }
  }

  Complex as_complex() const {
    switch (kind()) {
      case Kind::integer: return Complex(Rational(std::get<long long>(v_)));
      case Kind::rational: return Complex(std::get<Rational>(v_));
      default: return std::get<Complex>(v_);
    }
  }

  // The exponent as a Scalar of the requested mode. A numeric exponent has
  // no exact representation (throws ModeMismatch).
  Scalar to_scalar(Mode m) const {
    if (m == Mode::exact) return Scalar::exact(as_rational());
    return Scalar::numeric(as_complex());
  }

  bool is_zero() const {
    switch (kind()) {
      case Kind::integer: return std::get<long long>(v_) == 0;
      case Kind::rational: return std::get<Rational>(v_).is_zero();
      default: return std::get<Complex>(v_).is_zero();
    }
  }

  friend Exponent operator+(const Exponent& a, long long b) {
    switch (a.kind()) {
      case Kind::integer: return Exponent(std::get<long long>(a.v_) + b);
      case Kind::rational: return of_rat(Rational(std::get<Rational>(a.v_) + b));
      default: return Exponent(std::get<Complex>(a.v_) + Complex(Rational(b)));
    }
  }
  friend Exponent operator-(const Exponent& a, long long b) { return a + (-b); }
  friend Exponent operator-(const Exponent& a) {
    switch (a.kind()) {
      case Kind::integer: return Exponent(-std::get<long long>(a.v_));
      case Kind::rational: return Exponent(Rational(-std::get<Rational>(a.v_)));
      default: return Exponent(-std::get<Complex>(a.v_));
    }
  }
  // b - a for integer b.
  friend Exponent rsub(long long b, const Exponent& a) { return (-a) + b; }

  friend Exponent operator*(const Exponent& a, long long b) {
    switch (a.kind()) {
      case Kind::integer: return Exponent(std::get<long long>(a.v_) * b);
      case Kind::rational: return of_rat(Rational(std::get<Rational>(a.v_) * b));
      default: return Exponent(std::get<Complex>(a.v_) * Complex(Rational(b)));
    }
  }

  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    if (a.kind() == Kind::numeric || b.kind() == Kind::numeric)
      return Exponent(a.as_complex() + b.as_complex());
    if (a.kind() == Kind::rational || b.kind() == Kind::rational)
      return of_rat(Rational(a.as_rational() + b.as_rational()));
    return Exponent(std::get<long long>(a.v_) + std::get<long long>(b.v_));
  }

  std::string str() const {
    switch (kind()) {
      case Kind::integer: return std::to_string(std::get<long long>(v_));
      case Kind::rational: return Scalar::exact(std::get<Rational>(v_)).str();
      default: return Scalar::numeric(std::get<Complex>(v_)).str();
    }
  }

 private:
  explicit Exponent(long long n) : v_(n) {}
  explicit Exponent(Rational r) : v_(std::move(r)) {}
  explicit Exponent(Complex z) : v_(std::move(z)) {}

  std::variant<long long, Rational, Complex> v_;
};

// ---------------------------------------------------------------------------
// Powers and q-numbers.
// ---------------------------------------------------------------------------

inline BigInt int_pow(const BigInt& b, unsigned long e) {
  BigInt acc(1), base(b);
  while (e) {
    if (e & 1ul) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline Rational rat_pow(const Rational& q, long long e) {
  if (e == 0) return Rational(1);
  bool invert = e < 0;
  unsigned long mag = invert ? static_cast<unsigned long>(-(e + 1)) + 1ul
                             : static_cast<unsigned long>(e);
  BigInt num = int_pow(mp::numerator(q), mag);
  BigInt den = int_pow(mp::denominator(q), mag);
  if (invert) {
    if (num.is_zero()) throw DivisionByZero("inverse of zero");
    return Rational(den, num);
  }
  return Rational(num, den);
}

// Exact mode admits q^s only for integer s (any rational q != 0) or q = 1
// (any rational s). Everything else goes through numeric mode.
inline bool exact_power_feasible(const Scalar& q, const Exponent& s) {
  if (q.mode() != Mode::exact) return true;
  switch (s.kind()) {
    case Exponent::Kind::integer: return true;
    case Exponent::Kind::rational:
      return mp::denominator(s.as_rational()) == 1 || q.rat() == 1;
    default: return false;
  }
}

// q^s. Numeric mode uses the principal branch exp(s log q).
inline Scalar scalar_pow(const Scalar& q, const Exponent& s) {
  if (q.is_zero()) throw ZeroBase("scalar_pow with zero base");
  if (q.mode() == Mode::exact) {
    if (s.kind() == Exponent::Kind::integer)
      return Scalar::exact(rat_pow(q.rat(), s.as_int()));
    if (s.kind() == Exponent::Kind::rational && mp::denominator(s.as_rational()) == 1) {
      Rational r = s.as_rational();
      return Scalar::exact(rat_pow(q.rat(), static_cast<long long>(mp::numerator(r))));
    }
    if (q.rat() == 1) return Scalar::one(Mode::exact);
    throw ExactInfeasible("q^s is irrational; use numeric mode");
  }
  if (s.kind() == Exponent::Kind::integer)
    return Scalar::numeric(cpow_int(q.cplx(), s.as_int()));
  return Scalar::numeric(cpow(q.cplx(), s.as_complex()));
}

// [s]_q = (q^s - 1)/(q - 1), with the removable singularity at q = 1
// resolved to s. For integer s >= 0 this equals 1 + q + ... + q^{s-1}.
inline Scalar q_number(const Exponent& s, const Scalar& q) {
  if (q.is_one()) return s.to_scalar(q.mode());
  Scalar one = Scalar::one(q.mode());
  return (scalar_pow(q, s) - one) / (q - one);
}

inline Scalar q_number(long long n, const Scalar& q) {
  return q_number(Exponent::of_int(n), q);
}

}  // namespace iterfrac

#endif  // ITERFRAC_SCALAR_HPP
