#pragma once

#include <qid/divop.hpp>
#include <qid/polynomial.hpp>
#include <qid/qseries.hpp>
#include <qid/rational.hpp>

#include <span>
#include <vector>

namespace qid {

/// Polynomial of degree 2n whose coefficients satisfy f_{n-m} = c^m f_{n+m},
/// i.e. y^{-n} f(y) is invariant under y -> c/y. Exactly the polynomials of
/// the form prod (y - x_i)(c - x_i y) and their linear span.
class BcSymmetricPoly {
 public:
  BcSymmetricPoly(int n, Rational c, Poly p)
      : n_(n), c_(std::move(c)), poly_(std::move(p)) {
    if (n_ < 0) throw std::invalid_argument("negative degree parameter");
    if (c_.is_zero())
      throw Error(errc::wrong_path, "BC symmetry needs c != 0; use the c = 0 path");
    if (poly_.degree() > 2 * n_)
      throw std::invalid_argument("degree exceeds 2n");
    for (int m = 0; m <= n_; ++m)
      if (poly_.coeff(n_ - m) != pow(c_, m) * poly_.coeff(n_ + m))
        throw std::invalid_argument("coefficients violate f_{n-m} = c^m f_{n+m}");
  }

  int n() const noexcept { return n_; }
  const Rational& c() const noexcept { return c_; }
  const Poly& poly() const noexcept { return poly_; }
  Rational eval(const Rational& y) const { return poly_.eval(y); }

  friend bool operator==(const BcSymmetricPoly& a, const BcSymmetricPoly& b) {
    return a.n_ == b.n_ && a.c_ == b.c_ && a.poly_ == b.poly_;
  }

 private:
  int n_;
  Rational c_;
  Poly poly_;
};

/// prod_i (y - x_i)(c - x_i y), the generic member of the class.
inline BcSymmetricPoly bc_poly_from_roots(std::span<const Rational> roots,
                                          const Rational& c) {
  if (c.is_zero())
    throw Error(errc::wrong_path, "c = 0 has no BC product form; use the c = 0 path");
  Poly p = Poly::constant(Rational(1));
  for (const Rational& x : roots)
    p = p * Poly{-x * c, c + x * x, -x};  // (y - x)(c - x y)
  return BcSymmetricPoly(static_cast<int>(roots.size()), c, std::move(p));
}

/// Interpolation nodes A = {a_i, c/a_i}, B = {b_i, c/b_i}. Admissible when
/// every denominator the expansion can form is nonzero: all 4n values are
/// pairwise distinct, nothing vanishes, and no b-pair multiplies to c.
struct NodeSystem {
  int n;
  Rational c;
  std::vector<Rational> a;
  std::vector<Rational> b;

  NodeSystem(Rational c_in, std::vector<Rational> a_in, std::vector<Rational> b_in)
      : n(static_cast<int>(a_in.size())),
        c(std::move(c_in)),
        a(std::move(a_in)),
        b(std::move(b_in)) {
    if (n < 1 || b.size() != a.size())
      throw std::invalid_argument("node lists must be nonempty and of equal length");
    if (!admissible(c, a, b)) throw Error(errc::degenerate_nodes, "inadmissible node system");
  }

  static bool all_nonzero(const Rational& c, std::span<const Rational> a,
                          std::span<const Rational> b) {
    if (c.is_zero()) return false;
    for (const auto& v : a)
      if (v.is_zero()) return false;
    for (const auto& v : b)
      if (v.is_zero()) return false;
    return true;
  }

  /// The 4n values {a_i, c/a_i, b_j, c/b_j} are pairwise distinct.
  static bool points_distinct(const Rational& c, std::span<const Rational> a,
                              std::span<const Rational> b) {
    std::vector<Rational> pts;
    pts.reserve(2 * (a.size() + b.size()));
    for (const auto& v : a) {
      pts.push_back(v);
      pts.push_back(c / v);
    }
    for (const auto& v : b) {
      pts.push_back(v);
      pts.push_back(c / v);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j]) return false;
    return true;
  }

  /// b_i b_k != c for i != k, the divided-difference table guard. Follows
  /// from points_distinct but is kept independently checkable.
  static bool b_pairs_avoid_c(const Rational& c, std::span<const Rational> b) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t k = i + 1; k < b.size(); ++k)
        if (b[i] * b[k] == c) return false;
    return true;
  }

  static bool admissible(const Rational& c, std::span<const Rational> a,
                         std::span<const Rational> b) {
    return all_nonzero(c, a, b) && points_distinct(c, a, b) && b_pairs_avoid_c(c, b);
  }
};

/// Geometric specialization a_i = a q^{1-i}, b_i = b q^{1-i} feeding the
/// Jackson-type summations.
struct GeometricSpec {
  Rational a, b, c, q, u;
  int n = 0;

  std::vector<Rational> a_nodes() const { return progression(a); }
  std::vector<Rational> b_nodes() const { return progression(b); }

  NodeSystem nodes() const {
    if (n < 1) throw std::invalid_argument("node system needs n >= 1");
    return NodeSystem(c, a_nodes(), b_nodes());
  }

  bool nodes_admissible() const {
    if (n < 1 || q.is_zero() || a.is_zero() || b.is_zero()) return false;
    return NodeSystem::admissible(c, a_nodes(), b_nodes());
  }

 private:
  std::vector<Rational> progression(const Rational& base) const {
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) v.push_back(base * pow(q, 1 - i));
    return v;
  }
};

namespace detail {

inline void require_matching(const BcSymmetricPoly& f, const NodeSystem& nodes) {
  if (f.n() != nodes.n || f.c() != nodes.c)
    throw std::invalid_argument("polynomial and node system disagree on (n, c)");
}

}  // namespace detail

/// Expansion coefficient C_j of f over the interleaved basis
///
///   B_j(y) = prod_{k=1}^{j} (y - b_k)(y - c/b_k) * prod_{i=1}^{n-j} (y - a_i)(y - c/a_i).
///
/// C_0 and C_n come from single evaluations at b_1 and a_1; the middle
/// coefficients from a length-j operator chain applied to
/// h(y) = f(y) y^{1-j} / prod_{i=1}^{n-j+1} (y - a_i)(y - c/a_i), evaluated
/// on the table points b_1..b_{j+1} and scaled by
/// (b_{j+1} - a_{n-j+1})(1 - c/(a_{n-j+1} b_{j+1})).
inline Rational coeff_C(int j, const BcSymmetricPoly& f, const NodeSystem& nodes) {
  detail::require_matching(f, nodes);
  const int n = nodes.n;
  if (j < 0 || j > n) throw std::invalid_argument("coefficient index out of range");
  const Rational& c = nodes.c;

  if (j == 0) {
    Rational denom(1);
    for (int i = 0; i < n; ++i)
      denom *= (nodes.b[0] - nodes.a[i]) * (nodes.b[0] - c / nodes.a[i]);
    if (denom.is_zero()) throw Error(errc::degenerate_nodes, "b_1 collides with the A side");
    return f.eval(nodes.b[0]) / denom;
  }
  if (j == n) {
    Rational denom(1);
    for (int i = 0; i < n; ++i)
      denom *= (nodes.a[0] - nodes.b[i]) * (nodes.a[0] - c / nodes.b[i]);
    if (denom.is_zero()) throw Error(errc::degenerate_nodes, "a_1 collides with the B side");
    return f.eval(nodes.a[0]) / denom;
  }

  MultiFunction h = MultiFunction::from_unary([&f, &nodes, j, n, c](const Rational& y) {
    Rational denom(1);
    for (int i = 0; i < n - j + 1; ++i)
      denom *= (y - nodes.a[i]) * (y - c / nodes.a[i]);
    if (denom.is_zero())
      throw Error(errc::degenerate_nodes, "table point collides with the A side");
    return f.eval(y) * pow(y, 1 - j) / denom;
  });
  const Rational top =
      eval_table(h, c, std::span(nodes.b.data(), static_cast<std::size_t>(j) + 1));
  const Rational& an = nodes.a[static_cast<std::size_t>(n - j)];  // a_{n-j+1}
  const Rational& bj = nodes.b[static_cast<std::size_t>(j)];      // b_{j+1}
  return top * (bj - an) * (Rational(1) - c / (an * bj));
}

/// Basis polynomial B_j(y) of the expansion above.
inline Poly interp_basis(int j, const NodeSystem& nodes) {
  std::vector<Rational> roots;
  roots.reserve(2 * static_cast<std::size_t>(nodes.n));
  for (int k = 0; k < j; ++k) {
    roots.push_back(nodes.b[k]);
    roots.push_back(nodes.c / nodes.b[k]);
  }
  for (int i = 0; i < nodes.n - j; ++i) {
    roots.push_back(nodes.a[i]);
    roots.push_back(nodes.c / nodes.a[i]);
  }
  return Poly::from_roots(roots);
}

/// Reassembles sum_j C_j B_j(y). For every f in the class this reproduces f
/// coefficient-by-coefficient; the test suites assert exactly that.
inline BcSymmetricPoly reconstruct(const BcSymmetricPoly& f, const NodeSystem& nodes) {
  detail::require_matching(f, nodes);
  Poly acc;
  for (int j = 0; j <= nodes.n; ++j) acc = acc + coeff_C(j, f, nodes) * interp_basis(j, nodes);
  return BcSymmetricPoly(nodes.n, nodes.c, std::move(acc));
}

/// Classical 2n-point Newton-type reconstruction (the c = 0 degeneration):
///
///   f(y) = sum_j C_j prod_{k<=j} (y - b_k) prod_{i<=n-j} (y - a_i),
///
/// with C_j read off classical divided-difference tables of
/// f(y) / prod_{i=1}^{n-j+1} (y - a_i) on b_1..b_{j+1}.
inline Poly newton_reconstruct_c0(const Poly& f, std::span<const Rational> a,
                                  std::span<const Rational> b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("node lists must have equal length");
  if (f.degree() > n) throw std::invalid_argument("degree exceeds node count");
  if (n == 0) return f;
  {
    std::vector<Rational> pts(a.begin(), a.end());
    pts.insert(pts.end(), b.begin(), b.end());
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j]) throw Error(errc::degenerate_nodes, "coincident c = 0 nodes");
  }
  const Rational zero(0);
  Poly acc;
  for (int j = 0; j <= n; ++j) {
    Rational cj;
    if (j == 0) {
      Rational denom(1);
      for (int i = 0; i < n; ++i) denom *= b[0] - a[i];
      cj = f.eval(b[0]) / denom;
    } else if (j == n) {
      Rational denom(1);
      for (int i = 0; i < n; ++i) denom *= a[0] - b[i];
      cj = f.eval(a[0]) / denom;
    } else {
      MultiFunction h = MultiFunction::from_unary([&f, &a, j, n](const Rational& y) {
        Rational denom(1);
        for (int i = 0; i < n - j + 1; ++i) denom *= y - a[i];
        return f.eval(y) / denom;
      });
      cj = eval_table(h, zero, std::span(b.data(), static_cast<std::size_t>(j) + 1)) *
           (b[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(n - j)]);
    }
    std::vector<Rational> roots(b.begin(), b.begin() + j);
    roots.insert(roots.end(), a.begin(), a.begin() + (n - j));
    acc = acc + cj * Poly::from_roots(roots);
  }
  return acc;
}

/// Scalar coefficient of the k-th summand of the geometric-node expansion
/// (the q^{C(n,2)} prefactor is folded in so that the summand equals
/// coefficient * ypart).
inline Rational jackson_corollary_coefficient(const GeometricSpec& s, int k) {
  const int n = s.n;
  if (k < 0 || k > n) throw std::invalid_argument("summand index out of range");
  if (s.a.is_zero() || s.b.is_zero() || s.q.is_zero())
    throw Error(errc::degenerate_parameters, "a, b, q must be nonzero");
  const Rational num = cauchy_poly(s.b, s.u * pow(s.q, n - 1), s.q, n - k) *
                       cauchy_poly(s.a, s.u * pow(s.q, n - k), s.q, k) *
                       cauchy_poly(s.u, s.c / s.b, s.q, n - k) *
                       cauchy_poly(s.c / s.a, s.u, s.q, k);
  const Rational ab = s.a * s.b;
  const Rational den = cauchy_poly(s.b, s.a, s.q, n) *
                       q_pochhammer(s.c * pow(s.q, n - k - 1) / ab, s.q, n - k) *
                       q_pochhammer(s.c * pow(s.q, 2 * (n - k)) / ab, s.q, k);
  if (den.is_zero())
    throw Error(errc::degenerate_parameters, "vanishing summand denominator");
  return pow(s.q, choose2(n)) * gauss_binomial(n, k, s.q) * num / den;
}

/// y-dependent part of the k-th summand.
inline Rational jackson_corollary_ypart(const GeometricSpec& s, int k, const Rational& y) {
  const int n = s.n;
  if (k < 0 || k > n) throw std::invalid_argument("summand index out of range");
  return cauchy_poly(y, s.a * pow(s.q, k + 1 - n), s.q, n - k) *
         cauchy_poly(y, s.c / s.a, s.q, n - k) *
         cauchy_poly(y, s.b * pow(s.q, 1 - n), s.q, k) *
         cauchy_poly(y, s.c * pow(s.q, n - k) / s.b, s.q, k);
}

/// Terminating summation at geometric nodes:
///
///   prod_{i=1}^{n} (u q^{i-1} - y)(c - u q^{i-1} y)  =  sum_{k=0}^{n} coefficient_k * ypart_k(y).
///
/// Both sides are returned; they agree for admissible parameters.
inline Sides jackson_corollary_sides(const GeometricSpec& s, const Rational& y) {
  Rational lhs(1);
  for (int i = 1; i <= s.n; ++i) {
    const Rational ui = s.u * pow(s.q, i - 1);
    lhs *= (ui - y) * (s.c - ui * y);
  }
  Rational rhs(0);
  for (int k = 0; k <= s.n; ++k)
    rhs += jackson_corollary_coefficient(s, k) * jackson_corollary_ypart(s, k, y);
  return {lhs, rhs};
}

/// Parameter set of the classical very-well-poised terminating summation.
struct JacksonParams {
  Rational a, b, c, d, e, q;
  int n = 0;

  /// The balancing constraint a^2 q^{n+1} = bcde; substitution-induced
  /// parameters satisfy it identically.
  bool balanced() const { return a * a * pow(q, n + 1) == b * c * d * e; }
};

/// Substitution mapping a geometric instance to classical parameters:
/// a <- cq^{-1}/(ab), b <- y/a, c <- c/(bu), d <- c/(ay), e <- uq^{n-1}/b.
inline JacksonParams jackson_params_from_corollary(const GeometricSpec& s,
                                                   const Rational& y) {
  if (s.a.is_zero() || s.b.is_zero() || s.u.is_zero() || y.is_zero() || s.q.is_zero())
    throw Error(errc::degenerate_parameters, "substitution needs a, b, u, y, q nonzero");
  return JacksonParams{
      .a = s.c / (s.q * s.a * s.b),
      .b = y / s.a,
      .c = s.c / (s.b * s.u),
      .d = s.c / (s.a * y),
      .e = s.u * pow(s.q, s.n - 1) / s.b,
      .q = s.q,
      .n = s.n,
  };
}

/// Jackson's terminating 8phi7 summation. Assumes balanced parameters (see
/// JacksonParams::balanced); the sides are computed independently and
/// returned for comparison.
inline Sides jackson_8phi7_sides(const JacksonParams& p) {
  const int n = p.n;
  if (n < 0) throw std::invalid_argument("negative order");
  if (p.a == Rational(1))
    throw Error(errc::degenerate_parameters, "1 - a = 0");
  if (p.b.is_zero() || p.c.is_zero() || p.d.is_zero() || p.e.is_zero() || p.q.is_zero())
    throw Error(errc::degenerate_parameters, "b, c, d, e, q must be nonzero");

  const Rational aq = p.a * p.q;
  const Rational lhs_num = q_pochhammer(aq, p.q, n) *
                           q_pochhammer(aq / (p.b * p.c), p.q, n) *
                           q_pochhammer(aq / (p.b * p.d), p.q, n) *
                           q_pochhammer(aq / (p.c * p.d), p.q, n);
  const Rational lhs_den = q_pochhammer(aq / p.b, p.q, n) *
                           q_pochhammer(aq / p.c, p.q, n) *
                           q_pochhammer(aq / p.d, p.q, n) *
                           q_pochhammer(aq / (p.b * p.c * p.d), p.q, n);
  if (lhs_den.is_zero())
    throw Error(errc::degenerate_parameters, "vanishing closed-form denominator");

  Rational rhs(0);
  const Rational one(1);
  for (int k = 0; k <= n; ++k) {
    const Rational num = (one - p.a * pow(p.q, 2 * k)) * q_pochhammer(p.a, p.q, k) *
                         q_pochhammer(p.b, p.q, k) * q_pochhammer(p.c, p.q, k) *
                         q_pochhammer(p.d, p.q, k) * q_pochhammer(p.e, p.q, k) *
                         q_pochhammer(pow(p.q, -n), p.q, k) * pow(p.q, k);
    const Rational den = (one - p.a) * q_pochhammer(p.q, p.q, k) *
                         q_pochhammer(aq / p.b, p.q, k) * q_pochhammer(aq / p.c, p.q, k) *
                         q_pochhammer(aq / p.d, p.q, k) * q_pochhammer(aq / p.e, p.q, k) *
                         q_pochhammer(p.a * pow(p.q, n + 1), p.q, k);
    if (den.is_zero())
      throw Error(errc::degenerate_parameters, "vanishing summand denominator at k=" +
                                                   std::to_string(k));
    rhs += num / den;
  }
  return {lhs_num / lhs_den, rhs};
}

}  // namespace qid
