#pragma once

#include <qid/rational.hpp>

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace qid {

/// Exactly evaluable function on tuples of scalars. Values are immutable;
/// evaluation is pure, so instances can be shared freely across threads.
/// A function of arity m ignores tuple coordinates beyond m.
class MultiFunction {
 public:
  using Evaluator = std::function<Rational(std::span<const Rational>)>;

  MultiFunction(int arity, Evaluator eval) : arity_(arity), eval_(std::move(eval)) {
    if (arity_ < 1) throw std::invalid_argument("MultiFunction arity must be positive");
  }

  static MultiFunction constant(Rational v) {
    return MultiFunction(1, [v = std::move(v)](std::span<const Rational>) { return v; });
  }

  static MultiFunction from_unary(std::function<Rational(const Rational&)> g) {
    return MultiFunction(1, [g = std::move(g)](std::span<const Rational> xs) {
      return g(xs[0]);
    });
  }

  /// The function (x_1, x_2, ...) -> g(x_slot), slot 1-based.
  static MultiFunction unary_at(std::function<Rational(const Rational&)> g, int slot) {
    if (slot < 1) throw std::invalid_argument("slot must be positive");
    return MultiFunction(slot, [g = std::move(g), slot](std::span<const Rational> xs) {
      return g(xs[static_cast<std::size_t>(slot) - 1]);
    });
  }

  int arity() const noexcept { return arity_; }

  Rational operator()(std::span<const Rational> xs) const {
    if (static_cast<int>(xs.size()) < arity_)
      throw Error(errc::shape_error, "tuple shorter than function arity");
    return eval_(xs);
  }

  friend MultiFunction operator*(const MultiFunction& f, const MultiFunction& g) {
    return MultiFunction(std::max(f.arity_, g.arity_),
                         [f, g](std::span<const Rational> xs) { return f(xs) * g(xs); });
  }

  friend MultiFunction operator+(const MultiFunction& f, const MultiFunction& g) {
    return MultiFunction(std::max(f.arity_, g.arity_),
                         [f, g](std::span<const Rational> xs) { return f(xs) + g(xs); });
  }

 private:
  int arity_;
  Evaluator eval_;
};

/// Composition order for divided-difference operators: indices [1, 2, ..., j]
/// apply the slot-1 operator first. This is the prefix rendering of the
/// postfix chain notation f d_1 ... d_j.
struct OperatorChain {
  Rational c;
  std::vector<int> indices;
};

/// The i-th c-divided difference of f:
///
///   g(..., x_i, x_{i+1}, ...) = (f(..., x_i, x_{i+1}, ...) - f(..., x_{i+1}, x_i, ...))
///                               / ((x_i - x_{i+1}) (1 - c / (x_i x_{i+1})))
///
/// With c = 0 this is the classical divided difference. Guards run at
/// evaluation time since singular pairs depend on the point, not on f.
inline MultiFunction apply_cdd(const MultiFunction& f, int i, const Rational& c) {
  if (i < 1) throw std::invalid_argument("operator index must be positive");
  const int arity = std::max(f.arity(), i + 1);
  auto eval = [f, i, c](std::span<const Rational> xs) -> Rational {
    const Rational& xi = xs[static_cast<std::size_t>(i) - 1];
    const Rational& xj = xs[static_cast<std::size_t>(i)];
    if (xi == xj)
      throw Error(errc::coincident_points, "x_i = x_{i+1} at slot " + std::to_string(i));
    Rational denom = xi - xj;
    if (!c.is_zero()) {
      if (xi.is_zero() || xj.is_zero())
        throw Error(errc::zero_coordinate, "zero coordinate with c != 0");
      if (xi * xj == c)
        throw Error(errc::c_singular_pair, "x_i x_{i+1} = c at slot " + std::to_string(i));
      denom *= Rational(1) - c / (xi * xj);
    }
    std::vector<Rational> swapped(xs.begin(), xs.end());
    std::swap(swapped[static_cast<std::size_t>(i) - 1], swapped[static_cast<std::size_t>(i)]);
    return (f(xs) - f(swapped)) / denom;
  };
  return MultiFunction(arity, std::move(eval));
}

/// Left-to-right fold of apply_cdd over chain.indices; the empty chain is
/// the identity. Each outer evaluation memoizes the base function on the
/// argument tuples it revisits (the naive expansion is exponential in the
/// chain length); the cache lives only for that one call, keeping the
/// result a pure value.
inline MultiFunction apply_chain(const MultiFunction& f, const OperatorChain& chain) {
  if (chain.indices.empty()) return f;
  int arity = f.arity();
  for (int i : chain.indices) arity = std::max(arity, i + 1);
  auto eval = [f, chain](std::span<const Rational> xs) -> Rational {
    auto cache = std::make_shared<std::map<std::vector<Rational>, Rational>>();
    const int base_arity = f.arity();
    MultiFunction base(base_arity,
                       [f, cache, base_arity](std::span<const Rational> ys) -> Rational {
                         std::vector<Rational> key(ys.begin(), ys.begin() + base_arity);
                         if (auto it = cache->find(key); it != cache->end()) return it->second;
                         Rational v = f(ys);
                         cache->emplace(std::move(key), v);
                         return v;
                       });
    MultiFunction g = base;
    for (int i : chain.indices) g = apply_cdd(g, i, chain.c);
    return g(xs);
  };
  return MultiFunction(arity, std::move(eval));
}

/// Triangular evaluation of (f d_1 ... d_j)(b_1, ..., b_{j+1}) for a
/// one-variable f, the Newton-scheme analog of the operator chain:
///
///   D[1][i]   = f(b_i)
///   D[m+1][i] = (D[m][m] - D[m][i]) / ((b_m - b_i)(1 - c/(b_m b_i))),  i > m
///
/// O(j^2) evaluations against the chain's exponential expansion; the two
/// routes are cross-checked in the test suite.
class DividedDiffTable {
 public:
  DividedDiffTable(const MultiFunction& f, const Rational& c,
                   std::span<const Rational> points)
      : c_(c), points_(points.begin(), points.end()) {
    if (f.arity() != 1)
      throw std::invalid_argument("divided-difference table needs a one-variable function");
    const std::size_t m = points_.size();
    if (m == 0) throw std::invalid_argument("divided-difference table needs points");
    for (std::size_t i = 0; i < m; ++i) {
      if (!c_.is_zero() && points_[i].is_zero())
        throw Error(errc::zero_coordinate, "zero table point with c != 0");
      for (std::size_t k = i + 1; k < m; ++k) {
        if (points_[i] == points_[k])
          throw Error(errc::coincident_points, "coincident table points");
        if (!c_.is_zero() && points_[i] * points_[k] == c_)
          throw Error(errc::c_singular_pair, "b_i b_k = c among table points");
      }
    }
    rows_.reserve(m);
    std::vector<Rational> first;
    first.reserve(m);
    for (const Rational& b : points_) first.push_back(f(std::span(&b, 1)));
    rows_.push_back(std::move(first));
    for (std::size_t level = 1; level < m; ++level) {
      const auto& prev = rows_.back();            // entries i = level-1 .. m-1 (0-based)
      const Rational& pivot = prev.front();       // D[level][level]
      const Rational& bp = points_[level - 1];
      std::vector<Rational> next;
      next.reserve(m - level);
      for (std::size_t i = level; i < m; ++i) {
        Rational denom = bp - points_[i];
        if (!c_.is_zero()) denom *= Rational(1) - c_ / (bp * points_[i]);
        next.push_back((pivot - prev[i - (level - 1)]) / denom);
      }
      rows_.push_back(std::move(next));
    }
  }

  /// D[m][i], both 1-based, m <= i <= #points.
  const Rational& at(int m, int i) const {
    return rows_.at(static_cast<std::size_t>(m) - 1)
        .at(static_cast<std::size_t>(i) - static_cast<std::size_t>(m));
  }

  /// D[j+1][j+1]: the full-length chain value.
  const Rational& top() const { return rows_.back().front(); }

  const Rational& c() const noexcept { return c_; }
  std::span<const Rational> points() const noexcept { return points_; }

 private:
  Rational c_;
  std::vector<Rational> points_;
  std::vector<std::vector<Rational>> rows_;
};

/// (f d_1 ... d_j)(points) with j = points.size() - 1, via the table.
inline Rational eval_table(const MultiFunction& f, const Rational& c,
                           std::span<const Rational> points) {
  return DividedDiffTable(f, c, points).top();
}

}  // namespace qid
