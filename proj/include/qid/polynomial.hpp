#pragma once

#include <qid/rational.hpp>

#include <Eigen/Core>

#include <initializer_list>
#include <span>
#include <vector>

namespace qid {

using CoeffVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Dense univariate polynomial over Rational, coefficients in ascending
/// degree order. Trailing zero coefficients are trimmed so that equal
/// polynomials compare equal coefficient-by-coefficient.
class Poly {
 public:
  Poly() : c_(1) { c_(0) = Rational(0); }

  explicit Poly(CoeffVector c) : c_(std::move(c)) {
    if (c_.size() == 0) {
      c_.resize(1);
      c_(0) = Rational(0);
    }
    trim();
  }

  Poly(std::initializer_list<Rational> coeffs)
      : Poly(CoeffVector(Eigen::Map<const CoeffVector>(coeffs.begin(),
                                                       static_cast<Eigen::Index>(coeffs.size())))) {}

  static Poly constant(const Rational& v) {
    CoeffVector c(1);
    c(0) = v;
    return Poly(std::move(c));
  }

  /// prod (y - r) over the given roots.
  static Poly from_roots(std::span<const Rational> roots) {
    Poly p = constant(Rational(1));
    for (const Rational& r : roots) p = p * Poly{-r, Rational(1)};
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_(0).is_zero(); }

  /// Coefficient of y^i; zero beyond the stored degree.
  const Rational& coeff(int i) const {
    static const Rational kZero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_(i);
  }

  const CoeffVector& coeffs() const { return c_; }

  Rational eval(const Rational& y) const {
    Rational acc(0);
    for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * y + c_(i);
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    CoeffVector c(std::max(a.c_.size(), b.c_.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c(i) = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    CoeffVector c(std::max(a.c_.size(), b.c_.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c(i) = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    CoeffVector c(a.c_.size() + b.c_.size() - 1);
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = Rational(0);
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      for (Eigen::Index j = 0; j < b.c_.size(); ++j) c(i + j) += a.c_(i) * b.c_(j);
    return Poly(std::move(c));
  }

  friend Poly operator*(const Rational& s, const Poly& p) {
    CoeffVector c = p.c_;
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = s * c(i);
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      if (a.c_(i) != b.c_(i)) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    Eigen::Index n = c_.size();
    while (n > 1 && c_(n - 1).is_zero()) --n;
    c_.conservativeResize(n);
  }

  CoeffVector c_;
};

}  // namespace qid
