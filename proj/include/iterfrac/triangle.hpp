#ifndef ITERFRAC_TRIANGLE_HPP
#define ITERFRAC_TRIANGLE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "iterfrac/bell.hpp"
#include "iterfrac/qcalc.hpp"

namespace iterfrac {

// Lower-triangular coefficient table [n k]_U of a linear operator U on
// polynomials, U x^n = sum_k [n k]_U x^k, for 0 <= k <= n <= N.
class CoeffTriangle {
 public:
  CoeffTriangle(Mode m, int size) : size_(size), mode_(m) {
    if (size < 0 || size > Series::kMaxOrder) throw BadRange("triangle size out of range");
    a_.assign(static_cast<std::size_t>(size + 1) * (size + 2) / 2, Scalar::zero(m));
  }

  static CoeffTriangle identity(Mode m, int size) {
    CoeffTriangle t(m, size);
    for (int n = 0; n <= size; ++n) t.at(n, n) = Scalar::one(m);
    return t;
  }

  int size() const { return size_; }
  Mode mode() const { return mode_; }

  Scalar& at(int n, int k) {
    check(n, k);
    return a_[offset(n) + static_cast<std::size_t>(k)];
  }
  const Scalar& at(int n, int k) const {
    check(n, k);
    return a_[offset(n) + static_cast<std::size_t>(k)];
  }

  friend bool operator==(const CoeffTriangle& a, const CoeffTriangle& b) {
    return a.size_ == b.size_ && a.mode_ == b.mode_ && a.a_ == b.a_;
  }

 private:
  void check(int n, int k) const {
    if (n < 0 || n > size_ || k < 0 || k > n)
      throw BadRange("triangle index outside 0 <= k <= n <= N");
  }
  static std::size_t offset(int n) {
    return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) + 1) / 2;
  }

  int size_;
  Mode mode_;
  std::vector<Scalar> a_;
};

// Max of |a - b| / max(1, |a|, |b|) over all entries.
inline Real triangle_deviation(const CoeffTriangle& a, const CoeffTriangle& b) {
  if (a.size() != b.size()) throw SizeMismatch("triangle sizes differ");
  Real worst(0);
  for (int n = 0; n <= a.size(); ++n)
    for (int k = 0; k <= n; ++k) {
      Real d = rel_deviation(a.at(n, k), b.at(n, k));
      if (d > worst) worst = d;
    }
  return worst;
}

// [n k]_{UV} = sum_{j=k}^{n} [j k]_U [n j]_V  (UV applies V first).
inline CoeffTriangle triangle_product(const CoeffTriangle& u, const CoeffTriangle& v) {
  if (u.size() != v.size()) throw SizeMismatch("triangle sizes differ");
  if (u.mode() != v.mode()) throw ModeMismatch("triangle modes differ");
  CoeffTriangle r(u.mode(), u.size());
  for (int n = 0; n <= u.size(); ++n)
    for (int k = 0; k <= n; ++k) {
      Scalar s = Scalar::zero(u.mode());
      for (int j = k; j <= n; ++j) s += u.at(j, k) * v.at(n, j);
      r.at(n, k) = s;
    }
  return r;
}

// U^s by repeated product; s >= 0.
inline CoeffTriangle triangle_power(const CoeffTriangle& u, long s) {
  if (s < 0) throw NegativeExponent("triangle_power needs s >= 0");
  CoeffTriangle r = CoeffTriangle::identity(u.mode(), u.size());
  for (long i = 0; i < s; ++i) r = triangle_product(r, u);
  return r;
}

// Powers U^0, U^1, ..., U^maxp.
inline std::vector<CoeffTriangle> triangle_powers(const CoeffTriangle& u, int maxp) {
  std::vector<CoeffTriangle> out;
  out.push_back(CoeffTriangle::identity(u.mode(), u.size()));
  for (int p = 1; p <= maxp; ++p) out.push_back(triangle_product(out.back(), u));
  return out;
}

// Coefficient triangle of the umbral operator of f:
// [n k] = B_{n,k}(a_1, ..., a_{n-k+1}) with a_n the exponential
// coefficients of f; [0 0] = 1 and [n 0] = 0 for n >= 1.
inline CoeffTriangle phi_triangle(const Series& f, int size) {
  f.require_invertible();
  if (size > f.order()) throw BadRange("triangle size exceeds series truncation");
  Mode m = f.mode();
  CoeffTriangle t(m, size);
  t.at(0, 0) = Scalar::one(m);
  std::vector<Scalar> a;  // exponential coefficients a_1..a_N
  for (int n = 1; n <= size; ++n) a.push_back(exp_coeff(f, n));
  for (int n = 1; n <= size; ++n) {
    // one partition enumeration per n, bucketed by weight k
    for (const MultiIndex& l : enumerate_partitions(n, n)) {
      long k = l.weight();
      if (k > n) continue;
      Rational coeff(factorial(n));
      Scalar mono = Scalar::one(m);
      for (int p = 1; p <= l.max_part(); ++p) {
        long lp = l.at(p);
        if (lp == 0) continue;
        coeff /= Rational(int_pow(factorial(p), static_cast<unsigned long>(lp)) *
                          factorial(static_cast<int>(lp)));
        for (long i = 0; i < lp; ++i) mono *= a[static_cast<std::size_t>(p - 1)];
      }
      t.at(n, static_cast<int>(k)) += Scalar::rational(coeff, m) * mono;
    }
  }
  return t;
}

// [n k]_{(phi - 1)^p}: sum over strictly increasing chains
// k = j_0 < ... < j_p = n of prod [j_{i+1} j_i]_phi. Zero when p > n - k.
inline Scalar strict_chain_coeff(const CoeffTriangle& phi, int n, int k, int p) {
  Mode m = phi.mode();
  if (p == 0) return k == n ? Scalar::one(m) : Scalar::zero(m);
  if (p > n - k) return Scalar::zero(m);
  Scalar total = Scalar::zero(m);
  // DFS over strict chains, pruning zero partial products
  std::function<void(int, int, const Scalar&)> walk = [&](int j, int step, const Scalar& prod) {
    if (step == p) {
      if (j == n) total += prod;
      return;
    }
    for (int jn = j + 1; jn <= n - (p - step - 1); ++jn) {
      Scalar f = prod * phi.at(jn, j);
      if (f.is_zero()) continue;
      walk(jn, step + 1, f);
    }
  };
  walk(k, 0, Scalar::one(m));
  return total;
}

// Triangles of the q-Pochhammer operator products (phi, -q^c)_q^p for
// p = 0..maxp, by the recurrence with the commuting factors phi - q^{c+p-1}.
inline std::vector<CoeffTriangle> pochhammer_triangles(const CoeffTriangle& phi,
                                                       const QContext& ctx, int c,
                                                       int maxp) {
  std::vector<CoeffTriangle> out;
  out.push_back(CoeffTriangle::identity(phi.mode(), phi.size()));
  for (int p = 1; p <= maxp; ++p) {
    CoeffTriangle factor = phi;
    const Scalar& shift = ctx.qpow(c + p - 1);
    for (int n = 0; n <= phi.size(); ++n) factor.at(n, n) -= shift;
    out.push_back(triangle_product(out.back(), factor));
  }
  return out;
}

// [n k]_{(phi, -q^k)_q^p}: sum over weakly increasing chains
// k = j_0 <= ... <= j_p = n with factors
// ([j_{i+1} j_i]_phi - q^{i+k} delta_{j_{i+1} - j_i}).
// Vanishes for p > n - k through diagonal cancellation. Same values as
// pochhammer_triangles, by explicit enumeration; the expansions use the
// triangle form, the enumeration backs the cancellation tests.
inline Scalar pochhammer_chain_coeff(const CoeffTriangle& phi, const QContext& ctx,
                                     int n, int k, int p) {
  Mode m = phi.mode();
  if (p == 0) return k == n ? Scalar::one(m) : Scalar::zero(m);
  Scalar total = Scalar::zero(m);
  std::function<void(int, int, const Scalar&)> walk = [&](int j, int step, const Scalar& prod) {
    if (step == p) {
      if (j == n) total += prod;
      return;
    }
    for (int jn = j; jn <= n; ++jn) {
      Scalar f = phi.at(jn, j);
      if (jn == j) f -= ctx.qpow(step + k);
      if (f.is_zero()) continue;
      walk(jn, step + 1, prod * f);
    }
  };
  walk(k, 0, Scalar::one(m));
  return total;
}

}  // namespace iterfrac

#endif  // ITERFRAC_TRIANGLE_HPP
