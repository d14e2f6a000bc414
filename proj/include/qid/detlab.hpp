#pragma once

#include <qid/qseries.hpp>
#include <qid/rational.hpp>
#include <qid/symfunc.hpp>

#include <Eigen/Core>

#include <span>
#include <utility>
#include <vector>

namespace qid {

using ExactMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

enum class DetBackend {
  rational_elimination,  // exact Gaussian elimination, pivot = first nonzero
  fraction_free,         // Bareiss over a cleared common denominator
};

namespace detail {

inline Rational det_rational_elimination(ExactMatrix m) {
  const Eigen::Index n = m.rows();
  Rational det(1);
  bool negate = false;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      negate = !negate;
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      const Rational factor = m(r, col) / m(col, col);
      for (Eigen::Index cc = col; cc < n; ++cc) m(r, cc) -= factor * m(col, cc);
    }
    det *= m(col, col);
  }
  return negate ? -det : det;
}

/// One-step Bareiss on the integer matrix obtained by scaling every entry
/// with the common denominator L; every division below is exact and the
/// final pivot is det(L * M) = L^n det(M).
inline Rational det_fraction_free(const ExactMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return Rational(1);
  BigInt lcm(1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const BigInt d = m(i, j).den();
      lcm = lcm / gcd(lcm, d) * d;
    }
  std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(n),
                                     std::vector<BigInt>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a[i][j] = m(i, j).num() * (lcm / m(i, j).den());

  BigInt prev(1);
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      Eigen::Index pivot = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Rational(0);
      std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(pivot)]);
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  BigInt det_scaled = a[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(n) - 1];
  if (negate) det_scaled = -det_scaled;
  return Rational(det_scaled) / pow(Rational(BigInt(lcm)), n);
}

}  // namespace detail

/// Exact determinant of a square matrix expression.
template <typename Derived>
Rational det_exact(const Eigen::MatrixBase<Derived>& expr,
                   DetBackend backend = DetBackend::rational_elimination) {
  ExactMatrix m = expr.derived();
  if (m.rows() != m.cols()) throw Error(errc::shape_error, "determinant of non-square matrix");
  if (m.rows() == 0) return Rational(1);
  return backend == DetBackend::rational_elimination ? detail::det_rational_elimination(std::move(m))
                                                     : detail::det_fraction_free(m);
}

/// Minor with one row and one column removed (0-based), for cofactor checks.
inline Rational minor_det(const ExactMatrix& m, Eigen::Index drop_row, Eigen::Index drop_col,
                          DetBackend backend = DetBackend::rational_elimination) {
  ExactMatrix sub(m.rows() - 1, m.cols() - 1);
  for (Eigen::Index i = 0, si = 0; i < m.rows(); ++i) {
    if (i == drop_row) continue;
    for (Eigen::Index j = 0, sj = 0; j < m.cols(); ++j) {
      if (j == drop_col) continue;
      sub(si, sj) = m(i, j);
      ++sj;
    }
    ++si;
  }
  return det_exact(sub, backend);
}

/// Rows of Cauchy-polynomial products indexed by the points x_1..x_{n+1}:
/// entry(i, j) = P_{n-j+1}(x_i, a q^{j-n}) P_{n-j+1}(x_i, c/a)
///              P_{j-1}(x_i, b q^{1-n}) P_{j-1}(x_i, c q^{n-j+1}/b).
inline ExactMatrix kara_matrix(int n, const Rational& a, const Rational& b,
                               const Rational& c, const Rational& q,
                               std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != n + 1)
    throw std::invalid_argument("kara matrix needs n+1 points");
  if (a.is_zero() || b.is_zero() || q.is_zero())
    throw Error(errc::degenerate_parameters, "a, b, q must be nonzero");
  ExactMatrix m(n + 1, n + 1);
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) {
      const Rational& xi = x[static_cast<std::size_t>(i) - 1];
      m(i - 1, j - 1) = cauchy_poly(xi, a * pow(q, j - n), q, n - j + 1) *
                        cauchy_poly(xi, c / a, q, n - j + 1) *
                        cauchy_poly(xi, b * pow(q, 1 - n), q, j - 1) *
                        cauchy_poly(xi, c * pow(q, n - j + 1) / b, q, j - 1);
    }
  return m;
}

/// Determinant evaluation at arbitrary points:
///
///   det(kara_matrix) = prod_{i<j} (x_i - x_j)(c - x_i x_j)
///                      * b^C(n+1,2) q^{-(n+1)n(n-1)/3}
///                      * prod_{i=1}^{n+1} (a/b, c q^{2n+2-2i}/ab; q)_{i-1}.
inline Sides kara_sides(int n, const Rational& a, const Rational& b, const Rational& c,
                        const Rational& q, std::span<const Rational> x,
                        DetBackend backend = DetBackend::rational_elimination) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  const Rational lhs = det_exact(kara_matrix(n, a, b, c, q, x), backend);

  Rational rhs(1);
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      rhs *= (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]) *
             (c - x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]);
  const long long e3 = static_cast<long long>(n + 1) * n * (n - 1);
  static_assert(sizeof(long long) >= 8);
  if (e3 % 3 != 0) throw std::logic_error("(n+1)n(n-1) not divisible by 3");
  rhs *= pow(b, choose2(n + 1)) * pow(q, -(e3 / 3));
  for (int i = 1; i <= n + 1; ++i)
    rhs *= q_pochhammer(a / b, q, i - 1) *
           q_pochhammer(c * pow(q, 2 * n + 2 - 2 * i) / (a * b), q, i - 1);
  return {lhs, rhs};
}

/// Krattenthaler's determinant:
///
///   det((a x_i, a c/x_i; q)_{n-j} / (b x_i, b c/x_i; q)_{n-j})
///     = prod_{i<j} (x_j - x_i)(1 - c/(x_i x_j)) a^C(n,2) q^C(n,3)
///       * prod_i (b/a, abc q^{2n-2i}; q)_{i-1} / (b x_i, b c/x_i; q)_{n-1}.
inline Sides kratt_sides(int n, const Rational& a, const Rational& b, const Rational& c,
                         const Rational& q, std::span<const Rational> x,
                         DetBackend backend = DetBackend::rational_elimination) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("krattenthaler needs n points");
  if (a.is_zero() || q.is_zero())
    throw Error(errc::degenerate_parameters, "a, q must be nonzero");
  for (const Rational& xi : x)
    if (xi.is_zero()) throw Error(errc::degenerate_parameters, "zero point");

  ExactMatrix m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Rational& xi = x[static_cast<std::size_t>(i) - 1];
      const Rational den =
          q_pochhammer(b * xi, q, n - j) * q_pochhammer(b * c / xi, q, n - j);
      if (den.is_zero())
        throw Error(errc::degenerate_parameters, "vanishing entry denominator");
      m(i - 1, j - 1) = q_pochhammer(a * xi, q, n - j) *
                        q_pochhammer(a * c / xi, q, n - j) / den;
    }
  const Rational lhs = det_exact(m, backend);

  Rational rhs(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rational &xi = x[static_cast<std::size_t>(i)], &xj = x[static_cast<std::size_t>(j)];
      rhs *= (xj - xi) * (Rational(1) - c / (xi * xj));
    }
  rhs *= pow(a, choose2(n)) * pow(q, choose3(n));
  for (int i = 1; i <= n; ++i) {
    const Rational& xi = x[static_cast<std::size_t>(i) - 1];
    const Rational den =
        q_pochhammer(b * xi, q, n - 1) * q_pochhammer(b * c / xi, q, n - 1);
    if (den.is_zero())
      throw Error(errc::degenerate_parameters, "vanishing prefactor denominator");
    rhs *= q_pochhammer(b / a, q, i - 1) *
           q_pochhammer(a * b * c * pow(q, 2 * n - 2 * i), q, i - 1) / den;
  }
  return {lhs, rhs};
}

/// Geometric point grid x_i = u q^{i-1}, i = 1..n.
struct GeometricGrid {
  Rational u, q;
  int n = 0;

  std::vector<Rational> points() const {
    std::vector<Rational> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) pts.push_back(u * pow(q, i - 1));
    return pts;
  }

  /// Pairwise distinct points: u != 0 and q^d != 1 for 1 <= d < n.
  bool admissible() const {
    if (n < 1 || u.is_zero() || q.is_zero()) return false;
    Rational pw(1);
    for (int d = 1; d < n; ++d) {
      pw *= q;
      if (pw == Rational(1)) return false;
    }
    return true;
  }
};

/// The 2n-element variable set Y_{j,k} built from geometric (a, c/a) and
/// (b, c/b) pairs. Columns left of the deleted index k carry one more
/// a-pair; columns at or right of it carry one more b-pair:
///
///   j <  k:  pairs (a q^{-t}, c q^t/a), t = 0..n-j,   (b q^{1-n+s}, c q^{n-1-s}/b), s = 0..j-2
///   j >= k:  pairs (a q^{-t}, c q^t/a), t = 0..n-j-1, (b q^{1-n+s}, c q^{n-1-s}/b), s = 0..j-1
inline VariableSet build_yjk(int n, int k, int j, const Rational& a, const Rational& b,
                             const Rational& c, const Rational& q) {
  if (n < 1 || k < 1 || k > n + 1 || j < 1 || j > n)
    throw std::invalid_argument("index out of range");
  if (a.is_zero() || b.is_zero() || q.is_zero())
    throw Error(errc::degenerate_parameters, "a, b, q must be nonzero");
  const int a_pairs = j < k ? n - j + 1 : n - j;
  const int b_pairs = j < k ? j - 1 : j;
  VariableSet y;
  y.reserve(2 * static_cast<std::size_t>(n));
  for (int t = 0; t < a_pairs; ++t) {
    y.push_back(a * pow(q, -t));
    y.push_back(c * pow(q, t) / a);
  }
  for (int s = 0; s < b_pairs; ++s) {
    y.push_back(b * pow(q, 1 - n + s));
    y.push_back(c * pow(q, n - 1 - s) / b);
  }
  return y;
}

/// Cofactor determinant
///
///   F_{n,k} = (-1)^{n+k+1+C(n,2)} det(h_{2n-i+1}(U - Y_{j,k}))_{i,j=1}^n
///
/// over the grid U = {u q^{i-1}}. The raw h-determinant is the last-row
/// minor of the kara matrix in column k divided by the ascending Vandermonde
/// prod_{i<j}(x_j - x_i); the sign converts that to the cofactor over the
/// descending product prod_{i<j}(x_i - x_j), so that
/// prod_{i<j}(u q^{i-1} - u q^{j-1}) * F_{n,k} is exactly the cofactor. The
/// convention is pinned by the brute-force cofactor cross-check in the
/// test suite.
inline Rational fnk_det(int n, int k, const Rational& u, const Rational& a,
                        const Rational& b, const Rational& c, const Rational& q,
                        DetBackend backend = DetBackend::rational_elimination) {
  if (n < 1 || k < 1 || k > n + 1) throw std::invalid_argument("index out of range");
  const VariableSet grid = GeometricGrid{u, q, n}.points();
  ExactMatrix m(n, n);
  for (int j = 1; j <= n; ++j) {
    const VariableSet y = build_yjk(n, k, j, a, b, c, q);
    for (int i = 1; i <= n; ++i)
      m(i - 1, j - 1) = supersym_complete(grid, y, 2 * n - i + 1);
  }
  const Rational d = det_exact(m, backend);
  return (n + k + 1 + choose2(n)) % 2 == 0 ? d : -d;
}

/// Closed form of F_{n,k}: a polynomial in u of degree n^2 + n with fully
/// factored root structure.
inline Rational fnk_closed(int n, int k, const Rational& u, const Rational& a,
                           const Rational& b, const Rational& c, const Rational& q) {
  if (n < 1 || k < 1 || k > n + 1) throw std::invalid_argument("index out of range");
  if (a.is_zero() || b.is_zero() || q.is_zero())
    throw Error(errc::degenerate_parameters, "a, b, q must be nonzero");
  const long long e6 = static_cast<long long>(n) * (n - 1) * (2 * n - 1);
  if (e6 % 6 != 0) throw std::logic_error("n(n-1)(2n-1) not divisible by 6");

  Rational f = gauss_binomial(n, k - 1, q) * pow(q, -(e6 / 6)) * pow(b, choose2(n));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) f *= c - u * u * pow(q, i + j - 2);
  f *= cauchy_poly(b, u * pow(q, n - 1), q, n - k + 1) *
       cauchy_poly(a, u * pow(q, n - k + 1), q, k - 1) *
       cauchy_poly(u, c / b, q, n - k + 1) * cauchy_poly(c / a, u, q, k - 1);
  for (int i = 1; i <= n - 1; ++i)
    f *= pow(Rational(1) - a * pow(q, i - 1) / b, n - i);
  for (int j = 0; j <= n - 1; ++j) {
    if (j == n - k + 1) continue;
    for (int i = j + 1; i <= n; ++i) {
      if (i == n - k + 1) continue;
      f *= Rational(1) - c * pow(q, i + j - 1) / (a * b);
    }
  }
  return f;
}

/// Elementary-symmetric variant det(e_{2n-i+1}(Y_{j,k})) with its closed form.
inline Sides lemma33_sides(int n, int k, const Rational& a, const Rational& b,
                           const Rational& c, const Rational& q,
                           DetBackend backend = DetBackend::rational_elimination) {
  if (n < 1 || k < 1 || k > n + 1) throw std::invalid_argument("index out of range");
  ExactMatrix m(n, n);
  for (int j = 1; j <= n; ++j) {
    const VariableSet y = build_yjk(n, k, j, a, b, c, q);
    for (int i = 1; i <= n; ++i) m(i - 1, j - 1) = elem_sym(y, 2 * n - i + 1);
  }
  const Rational lhs = det_exact(m, backend);

  const long long e6 = static_cast<long long>(n) * (n - 1) * (2 * n - 1);
  Rational rhs = gauss_binomial(n, k - 1, q) * pow(c, choose2(n + 1)) *
                 pow(q, choose2(n - k + 1) - e6 / 6);
  for (int i = 1; i <= n - 1; ++i) rhs *= pow(b - a * pow(q, i - 1), n - i);
  for (int j = 0; j <= n - 1; ++j) {
    if (j == n - k + 1) continue;
    for (int i = j + 1; i <= n; ++i) {
      if (i == n - k + 1) continue;
      rhs *= Rational(1) - c * pow(q, i + j - 1) / (a * b);
    }
  }
  return {lhs, rhs};
}

struct CofactorCheck {
  Rational lhs, rhs;
  /// Per column k: (expansion coefficient C_{n,k}, brute-force cofactor).
  std::vector<std::pair<Rational, Rational>> cofactors;
  bool per_k_match = false;

  bool pass() const { return lhs == rhs && per_k_match; }
};

/// Last-row cofactor expansion of the kara determinant at x_i = u q^{i-1},
/// x_{n+1} = y. The left side is the fully evaluated product form; the right
/// side is sum_k C_{n,k} * (last-row entry k), with C_{n,k} computed through
/// fnk_det. Each C_{n,k} is also compared against the brute-force cofactor
/// of the (n+1) x (n+1) matrix.
inline CofactorCheck cofactor_expansion_check(
    int n, const Rational& u, const Rational& a, const Rational& b, const Rational& c,
    const Rational& q, const Rational& y,
    DetBackend backend = DetBackend::rational_elimination) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  const GeometricGrid grid{u, q, n};
  if (!grid.admissible())
    throw Error(errc::degenerate_parameters, "degenerate geometric grid");
  std::vector<Rational> x = grid.points();

  Rational vand(1), cprod(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      vand *= x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      cprod *= c - u * u * pow(q, i + j);  // i+j here is (i+1)+(j+1)-2
    }

  Rational lhs(1);
  for (int i = 1; i <= n; ++i) {
    const Rational ui = u * pow(q, i - 1);
    lhs *= (ui - y) * (c - ui * y);
  }
  const long long e3 = static_cast<long long>(n + 1) * n * (n - 1);
  lhs *= pow(b, choose2(n + 1)) * pow(q, -(e3 / 3)) * vand * cprod;
  for (int i = 1; i <= n + 1; ++i)
    lhs *= q_pochhammer(a / b, q, i - 1) *
           q_pochhammer(c * pow(q, 2 * n + 2 - 2 * i) / (a * b), q, i - 1);

  x.push_back(y);
  const ExactMatrix full = kara_matrix(n, a, b, c, q, x);

  CofactorCheck out;
  out.per_k_match = true;
  Rational rhs(0);
  for (int k = 1; k <= n + 1; ++k) {
    const Rational cnk = vand * fnk_det(n, k, u, a, b, c, q, backend);
    const Rational ypart = cauchy_poly(y, a * pow(q, k - n), q, n - k + 1) *
                           cauchy_poly(y, c / a, q, n - k + 1) *
                           cauchy_poly(y, b * pow(q, 1 - n), q, k - 1) *
                           cauchy_poly(y, c * pow(q, n - k + 1) / b, q, k - 1);
    rhs += cnk * ypart;
    Rational brute = minor_det(full, n, k - 1, backend);
    if ((n + 1 + k) % 2 != 0) brute = -brute;
    if (cnk != brute) out.per_k_match = false;
    out.cofactors.emplace_back(cnk, brute);
  }
  out.lhs = std::move(lhs);
  out.rhs = std::move(rhs);
  return out;
}

}  // namespace qid
