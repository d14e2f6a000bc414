#pragma once

#include <qid/rational.hpp>

#include <vector>

namespace qid {

/// Ordered list of scalars with multiset semantics; no symmetric-function
/// value below depends on the order of elements.
using VariableSet = std::vector<Rational>;

/// e_0..e_d of X in one pass, O(|X| * d).
inline std::vector<Rational> elem_sym_all(const VariableSet& X, int d) {
  std::vector<Rational> e(static_cast<std::size_t>(d) + 1, Rational(0));
  e[0] = Rational(1);
  for (const Rational& x : X)
    for (int i = d; i >= 1; --i) e[i] += x * e[i - 1];
  return e;
}

/// h_0..h_d of X in one pass, O(|X| * d).
inline std::vector<Rational> complete_sym_all(const VariableSet& X, int d) {
  std::vector<Rational> h(static_cast<std::size_t>(d) + 1, Rational(0));
  h[0] = Rational(1);
  for (const Rational& x : X)
    for (int i = 1; i <= d; ++i) h[i] += x * h[i - 1];
  return h;
}

/// Elementary symmetric function e_i(X); zero for i < 0 or i > |X|.
inline Rational elem_sym(const VariableSet& X, int i) {
  if (i < 0 || i > static_cast<int>(X.size())) return Rational(0);
  if (i == 0) return Rational(1);
  return elem_sym_all(X, i)[static_cast<std::size_t>(i)];
}

/// Complete symmetric function h_i(X); zero for i < 0.
inline Rational complete_sym(const VariableSet& X, int i) {
  if (i < 0) return Rational(0);
  if (i == 0) return Rational(1);
  return complete_sym_all(X, i)[static_cast<std::size_t>(i)];
}

/// Supersymmetric complete function h_i(X - Y): the t^i coefficient of
/// prod_{y in Y} (1 - yt) / prod_{x in X} (1 - xt), computed as the
/// convolution sum_j (-1)^j e_j(Y) h_{i-j}(X).
inline Rational supersym_complete(const VariableSet& X, const VariableSet& Y, int i) {
  if (i < 0) return Rational(0);
  if (i == 0) return Rational(1);
  const int jmax = std::min<int>(i, static_cast<int>(Y.size()));
  const auto e = elem_sym_all(Y, jmax);
  const auto h = complete_sym_all(X, i);
  Rational acc(0);
  for (int j = 0; j <= jmax; ++j) {
    const Rational term = e[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(i - j)];
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace qid
