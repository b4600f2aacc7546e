#ifndef ITERFRAC_ORACLES_HPP
#define ITERFRAC_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "iterfrac/series.hpp"

namespace iterfrac {

// Brute-force references. These deliberately depend only on series-core,
// never on the coefficient formulas they validate.

// f composed with itself s times.
inline Series oracle_compose_iterate(const Series& f, long s, int size) {
  if (s < 0) throw NegativeExponent("oracle_compose_iterate needs s >= 0");
  Series r = identity_series(f.mode(), size);
  for (long i = 0; i < s; ++i) r = compose(f.truncated(size), r, size);
  return r;
}

namespace detail {

// Exact m-th root of a rational, if one exists.
inline bool exact_root(const Rational& v, int m, Rational& out) {
  if (v < 0) return false;
  BigInt num = mp::numerator(v), den = mp::denominator(v);
  BigInt rn, rd;
  mpz_t tmp;
  mpz_init(tmp);
  int exact_n = mpz_root(tmp, num.backend().data(), static_cast<unsigned long>(m));
  rn = BigInt(tmp);
  int exact_d = mpz_root(tmp, den.backend().data(), static_cast<unsigned long>(m));
  rd = BigInt(tmp);
  mpz_clear(tmp);
  if (!exact_n || !exact_d) return false;
  out = Rational(rn, rd);
  return true;
}

}  // namespace detail

inline Scalar scalar_ipow_oracle(const Scalar& base, long long e) {
  return scalar_pow(base, Exponent::of_int(e));
}

// Order-by-order solver for g with g composed m times equal to f; g'(0) is
// the principal m-th root of f'(0). Each unknown coefficient enters its
// order linearly with sensitivity sum_i q^{i + d(m-1-i)}.
inline Series oracle_functional_root(const Series& f, int m, int size) {
  if (m < 2) throw BadRange("functional root needs m >= 2");
  f.require_invertible();
  if (size > f.order()) throw BadRange("root order exceeds truncation");
  Mode mode = f.mode();
  Scalar q = f.q();
  Scalar root = Scalar::zero(mode);
  if (mode == Mode::exact) {
    Rational r;
    if (f.q().rat() == 1)
      root = Scalar::one(mode);
    else if (detail::exact_root(q.rat(), m, r))
      root = Scalar::exact(r);
    else
      throw ExactInfeasible("f'(0) has no exact m-th root; use numeric mode");
  } else {
    root = Scalar::numeric(cexp(clog(q.cplx()) / Complex(static_cast<long>(m))));
  }
  Series g(mode, size);
  if (size >= 1) g.set_coeff(1, root);
  for (int d = 2; d <= size; ++d) {
    Series h = oracle_compose_iterate(g.truncated(d), m, d);
    // sensitivity of [x^d] g^{(m)} to g_d
    Scalar lambda = Scalar::zero(mode);
    for (int i = 0; i < m; ++i)
      lambda += scalar_ipow_oracle(root, i + static_cast<long long>(d) * (m - 1 - i));
    if (lambda.is_zero()) throw QDegenerate("degenerate root sensitivity");
    g.set_coeff(d, (f.coeff(d) - h.coeff(d)) / lambda);
  }
  return g;
}

// Closed-form fractional iterate of the Moebius-type series f = qx/(1-x):
// f^s = q^s x / (1 - [s]_q x), ordinary coefficients q^s [s]_q^{n-1}.
inline Series oracle_moebius(const Scalar& q, const Exponent& s, int size) {
  Scalar qs = scalar_pow(q, s);
  Scalar sq = q_number(s, q);
  Series r(q.mode(), size);
  Scalar cur = qs;
  for (int n = 1; n <= size; ++n) {
    r.set_coeff(n, cur);
    cur *= sq;
  }
  return r;
}

struct PartitionLemmaReport {
  bool ok = false;
  std::size_t chain_count = 0;          // weakly increasing chains k = j_0 <= ... <= j_s = n
  std::vector<std::size_t> per_p;       // |S_p| for p = 0..s
};

// Checks the chain-partition bijection: every weak chain is reconstructed
// exactly once from a strict chain plus a multiset of repeat indices.
inline PartitionLemmaReport verify_partition_lemma(int s, int k, int n) {
  if (s < 1 || k > n || k < 0) throw BadRange("need s >= 1 and 0 <= k <= n");
  PartitionLemmaReport rep;
  rep.per_p.assign(static_cast<std::size_t>(s) + 1, 0);

  // all weak chains
  std::set<std::vector<int>> weak;
  std::vector<int> chain{k};
  std::function<void()> walk_weak = [&]() {
    if (static_cast<int>(chain.size()) == s + 1) {
      if (chain.back() == n) weak.insert(chain);
      return;
    }
    for (int j = chain.back(); j <= n; ++j) {
      chain.push_back(j);
      walk_weak();
      chain.pop_back();
    }
  };
  walk_weak();
  rep.chain_count = weak.size();

  // reconstructions: strict chain J_0 < ... < J_p plus indices
  // 0 <= i_1 <= ... <= i_{s-p} <= p, merged and sorted
  std::set<std::vector<int>> seen;
  bool duplicate = false;
  for (int p = 0; p <= s; ++p) {
    std::vector<std::vector<int>> stricts;
    std::vector<int> sc{k};
    std::function<void()> walk_strict = [&]() {
      if (static_cast<int>(sc.size()) == p + 1) {
        if (sc.back() == n) stricts.push_back(sc);
        return;
      }
      for (int j = sc.back() + 1; j <= n; ++j) {
        sc.push_back(j);
        walk_strict();
        sc.pop_back();
      }
    };
    walk_strict();
    // multisets of repeat indices
    std::vector<std::vector<int>> repeats;
    std::vector<int> idx;
    std::function<void(int)> walk_idx = [&](int lo) {
      if (static_cast<int>(idx.size()) == s - p) {
        repeats.push_back(idx);
        return;
      }
      for (int i = lo; i <= p; ++i) {
        idx.push_back(i);
        walk_idx(i);
        idx.pop_back();
      }
    };
    walk_idx(0);
    for (const auto& J : stricts)
      for (const auto& reps : repeats) {
        std::vector<int> merged = J;
        for (int i : reps) merged.push_back(J[static_cast<std::size_t>(i)]);
        std::sort(merged.begin(), merged.end());
        rep.per_p[static_cast<std::size_t>(p)]++;
        if (!seen.insert(merged).second) duplicate = true;
      }
  }
  rep.ok = !duplicate && seen == weak;
  return rep;
}

}  // namespace iterfrac

#endif  // ITERFRAC_ORACLES_HPP
