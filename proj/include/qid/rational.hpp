#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace qid {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Failure modes of the exact kernels. Every code describes a property of
/// the inputs (a vanishing denominator somewhere in a formula), never of the
/// arithmetic itself, which is exact and total.
enum class errc {
  divide_by_zero,
  coincident_points,
  c_singular_pair,
  zero_coordinate,
  degenerate_q,
  degenerate_nodes,
  degenerate_parameters,
  wrong_path,
  shape_error,
  sample_exhausted,
};

inline const char* errc_name(errc e) {
  switch (e) {
    case errc::divide_by_zero: return "divide-by-zero";
    case errc::coincident_points: return "coincident-points";
    case errc::c_singular_pair: return "c-singular-pair";
    case errc::zero_coordinate: return "zero-coordinate";
    case errc::degenerate_q: return "degenerate-q";
    case errc::degenerate_nodes: return "degenerate-nodes";
    case errc::degenerate_parameters: return "degenerate-parameters";
    case errc::wrong_path: return "wrong-path";
    case errc::shape_error: return "shape-error";
    case errc::sample_exhausted: return "sample-exhausted";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Arbitrary-precision rational in canonical form: reduced fraction,
/// denominator strictly positive. All operations are exact; division by
/// zero throws Error(errc::divide_by_zero) rather than reaching backend
/// undefined behavior.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T v) : v_(v) {}  // NOLINT: implicit by design, mirrors int literals

  Rational(long long num, long long den) {
    if (den == 0) throw Error(errc::divide_by_zero, "rational with zero denominator");
    BigInt n(num), d(den);
    if (d < 0) {
      n = -n;
      d = -d;
    }
    v_ = BigRat(n, d);
  }

  explicit Rational(BigInt n) : v_(std::move(n)) {}
  explicit Rational(BigRat v) : v_(std::move(v)) {}

  explicit Rational(std::string_view text) { *this = parse(text); }

  /// Parses "p" or "p/q" with optional sign; the result is canonicalized.
  static Rational parse(std::string_view text);

  const BigRat& value() const noexcept { return v_; }
  BigInt num() const { return numerator(v_); }
  BigInt den() const { return denominator(v_); }

  bool is_zero() const noexcept { return v_.is_zero(); }
  int sign() const noexcept { return v_.sign(); }

  /// Canonical serialization, always "p/q" (e.g. "-3/7", "5/1").
  std::string str() const {
    return numerator(v_).str() + "/" + denominator(v_).str();
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(BigRat(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(BigRat(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(BigRat(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(errc::divide_by_zero, "rational division by zero");
    return Rational(BigRat(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(BigRat(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  BigRat v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// x^e for integer e of either sign; 0^0 = 1, 0^negative throws.
inline Rational pow(const Rational& x, long long e) {
  if (e == 0) return Rational(1);
  if (x.is_zero()) {
    if (e < 0) throw Error(errc::divide_by_zero, "zero base with negative exponent");
    return Rational(0);
  }
  const unsigned long long mag =
      e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  BigInt n = boost::multiprecision::pow(x.num(), static_cast<unsigned>(mag));
  BigInt d = boost::multiprecision::pow(x.den(), static_cast<unsigned>(mag));
  if (e < 0) return Rational(BigRat(n < 0 ? -d : d, boost::multiprecision::abs(n)));
  return Rational(BigRat(n, d));
}

inline Rational Rational::parse(std::string_view text) {
  const auto bad = [&] {
    throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
  };
  if (text.empty()) bad();
  std::string_view num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (num.empty() || den.empty()) bad();
  }
  const auto to_int = [&](std::string_view s) -> BigInt {
    const bool negative = s[0] == '-';
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) bad();
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') bad();
    BigInt v(std::string(s.substr(i)));
    return negative ? BigInt(-v) : v;
  };
  BigInt n = to_int(num), d = to_int(den);
  if (d == 0) throw Error(errc::divide_by_zero, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(BigRat(n, d));
}

/// Binomial-type integer exponents used throughout the q-identities.
inline long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }
inline long long choose3(long long n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// Two independently computed sides of an identity, compared exactly.
struct Sides {
  Rational lhs, rhs;
  bool equal() const { return lhs == rhs; }
};

}  // namespace qid

namespace Eigen {

template <>
struct NumTraits<qid::Rational> : GenericNumTraits<qid::Rational> {
  using Real = qid::Rational;
  using NonInteger = qid::Rational;
  using Nested = qid::Rational;
  using Literal = long long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline Real epsilon() { return qid::Rational(0); }
  static inline Real dummy_precision() { return qid::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
