#pragma once

#include <qid/rational.hpp>

namespace qid {

/// q-shifted factorial (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}); (a;q)_0 = 1.
inline Rational q_pochhammer(const Rational& a, const Rational& q, int n) {
  if (n < 0) throw std::invalid_argument("q_pochhammer: negative length");
  Rational acc(1), pw(1);
  for (int i = 0; i < n; ++i) {
    acc *= Rational(1) - a * pw;
    pw *= q;
  }
  return acc;
}

/// Cauchy polynomial P_n(a,b) = prod_{i=0}^{n-1} (a - b q^i).
///
/// Computed in product form, which is total: the equivalent a^n (b/a;q)_n is
/// undefined at a = 0 while the product extends it there continuously.
inline Rational cauchy_poly(const Rational& a, const Rational& b, const Rational& q,
                            int n) {
  if (n < 0) throw std::invalid_argument("cauchy_poly: negative length");
  Rational acc(1), pw(1);
  for (int i = 0; i < n; ++i) {
    acc *= a - b * pw;
    pw *= q;
  }
  return acc;
}

/// Gaussian binomial [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
///
/// Zero outside 0 <= k <= n. Requires q^i != 1 for 1 <= i <= n, otherwise
/// the (q;q) factors vanish and the ratio is meaningless.
inline Rational gauss_binomial(int n, int k, const Rational& q) {
  if (n < 0) throw std::invalid_argument("gauss_binomial: negative order");
  Rational pw(1);
  for (int i = 1; i <= n; ++i) {
    pw *= q;
    if (pw == Rational(1))
      throw Error(errc::degenerate_q, "q^" + std::to_string(i) + " = 1 in [n k]_q");
  }
  if (k < 0 || k > n) return Rational(0);
  return q_pochhammer(q, q, n) / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k));
}

}  // namespace qid
